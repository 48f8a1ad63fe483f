#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "charfn/cyclo.hpp"
#include "charfn/fingroup.hpp"

namespace charfn {

// A class function on a finite group: one cyclotomic value per conjugacy
// class, in class order.  Built either classwise or from a pointwise
// function (constancy on classes is then checked element by element).
struct ClassFn {
    GroupPtr group;
    std::vector<Cyc> values; // indexed by class
    std::string label;

    const Cyc& at_class(std::size_t i) const { return values.at(i); }
    Cyc at(std::uint64_t element) const;
    Cyc degree() const; // value at the identity
};

ClassFn from_pointwise(const GroupPtr& g, const std::function<Cyc(std::uint64_t)>& f,
                       std::string label = "");
ClassFn from_class_values(const GroupPtr& g, std::vector<Cyc> values, std::string label = "");
ClassFn trivial_character(const GroupPtr& g);

// pointwise algebra
ClassFn cf_add(const ClassFn& f, const ClassFn& g);
ClassFn cf_sub(const ClassFn& f, const ClassFn& g);
ClassFn cf_mul(const ClassFn& f, const ClassFn& g); // pointwise product
ClassFn cf_scale(const ClassFn& f, const Cyc& c);
ClassFn cf_conj(const ClassFn& f);

// (1/|G|) sum_x f(x) conj(g(x)), classwise
Cyc inner(const ClassFn& f, const ClassFn& g);

// induction from a subgroup (shared element codes), computed classwise by
// fusing subgroup classes into ambient classes
ClassFn induce(const ClassFn& f, const GroupPtr& g);
// restriction to a subgroup
ClassFn restrict_to(const ClassFn& f, const GroupPtr& h);

// <f,f> = 1 and f(identity) a positive integer
bool is_irreducible_character(const ClassFn& f);

// coefficients <f, basis_i>; the basis must be orthonormal
std::vector<Cyc> decompose(const ClassFn& f, const std::vector<ClassFn>& basis);

using CycMatrix = std::vector<std::vector<Cyc>>;

// rows = decompositions of the elements of `a` in the orthonormal list `b`
CycMatrix gram_transition(const std::vector<ClassFn>& a, const std::vector<ClassFn>& b);

// Scale to unit norm by an exact rational square root, then rotate by the
// unimodular scalar that makes the first nonzero coefficient against
// `basis` a positive rational.  Errors when either scalar does not exist
// in the working field.
ClassFn normalize_for_basis(const ClassFn& f, const std::vector<ClassFn>& basis);

struct MatrixBlock {
    std::vector<std::size_t> rows, cols; // ascending
    std::vector<std::string> entries;    // sorted multiset of nonzero entries
};

// Connected components of the bipartite nonzero-pattern graph of a square
// matrix; an all-zero row or column is an isolated component of its own.
std::vector<MatrixBlock> block_structure(const CycMatrix& m);

nlohmann::json blocks_to_json(const std::vector<MatrixBlock>& blocks);
nlohmann::json matrix_to_json(const CycMatrix& m);
std::string matrix_to_csv(const CycMatrix& m);

} // namespace charfn
