#include "charfn/classfn.hpp"

#include <algorithm>
#include <sstream>

#include "charfn/error.hpp"

namespace charfn {

Cyc ClassFn::at(std::uint64_t element) const {
    const ConjClasses& cc = group->classes();
    auto it = cc.index_of.find(element);
    require(it != cc.index_of.end(), ErrorKind::InvalidArgument, "element is not in the group");
    return values[it->second];
}

Cyc ClassFn::degree() const { return at(group->id()); }

ClassFn from_pointwise(const GroupPtr& g, const std::function<Cyc(std::uint64_t)>& f,
                       std::string label) {
    const ConjClasses& cc = g->classes();
    std::vector<Cyc> values;
    values.reserve(cc.count());
    for (std::size_t i = 0; i < cc.count(); ++i) {
        Cyc v = f(cc.members[i].front());
        for (std::size_t k = 1; k < cc.members[i].size(); ++k) {
            Cyc w = f(cc.members[i][k]);
            if (w != v) {
                std::ostringstream os;
                os << "not constant on a conjugacy class: f(" << g->to_string(cc.members[i][0])
                   << ") = " << v.to_string() << " but f(" << g->to_string(cc.members[i][k])
                   << ") = " << w.to_string();
                fail(ErrorKind::NotAClassFunction, os.str());
            }
        }
        values.push_back(std::move(v));
    }
    return {g, std::move(values), std::move(label)};
}

ClassFn from_class_values(const GroupPtr& g, std::vector<Cyc> values, std::string label) {
    require(values.size() == g->classes().count(), ErrorKind::InvalidArgument,
            "one value per conjugacy class required");
    return {g, std::move(values), std::move(label)};
}

ClassFn trivial_character(const GroupPtr& g) {
    return {g, std::vector<Cyc>(g->classes().count(), Cyc::one(1)), "triv"};
}

namespace {
void check_same_group(const ClassFn& f, const ClassFn& g) {
    require(f.group == g.group, ErrorKind::InvalidArgument,
            "class functions live on different groups");
}
} // namespace

ClassFn cf_add(const ClassFn& f, const ClassFn& g) {
    check_same_group(f, g);
    ClassFn out = f;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += g.values[i];
    return out;
}

ClassFn cf_sub(const ClassFn& f, const ClassFn& g) {
    check_same_group(f, g);
    ClassFn out = f;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= g.values[i];
    return out;
}

ClassFn cf_mul(const ClassFn& f, const ClassFn& g) {
    check_same_group(f, g);
    ClassFn out = f;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= g.values[i];
    return out;
}

ClassFn cf_scale(const ClassFn& f, const Cyc& c) {
    ClassFn out = f;
    for (auto& v : out.values) v *= c;
    return out;
}

ClassFn cf_conj(const ClassFn& f) {
    ClassFn out = f;
    for (auto& v : out.values) v = v.conj();
    return out;
}

Cyc inner(const ClassFn& f, const ClassFn& g) {
    check_same_group(f, g);
    const ConjClasses& cc = f.group->classes();
    Cyc acc = Cyc::zero(1);
    for (std::size_t i = 0; i < cc.count(); ++i)
        acc += f.values[i] * g.values[i].conj() * Rat(cc.sizes[i]);
    return acc * rat(Int(1), Int(f.group->order()));
}

ClassFn induce(const ClassFn& f, const GroupPtr& g) {
    const GroupPtr& h = f.group;
    require(h->ring.field == g->ring.field && h->ring.ar == g->ring.ar && h->n == g->n,
            ErrorKind::InvalidArgument, "subgroup and ambient group use different coefficients");
    for (std::uint64_t x : h->elements())
        require(g->contains(x), ErrorKind::InvalidArgument,
                "subgroup elements must lie in the ambient group");

    const ConjClasses& hc = h->classes();
    const ConjClasses& gc = g->classes();
    // fuse subgroup classes into ambient classes
    std::vector<Cyc> sums(gc.count(), Cyc::zero(1)); // sum |kappa| f(kappa)
    for (std::size_t k = 0; k < hc.count(); ++k) {
        std::uint32_t j = gc.index_of.at(hc.representatives[k]);
        sums[j] += f.values[k] * Rat(hc.sizes[k]);
    }
    std::vector<Cyc> values;
    values.reserve(gc.count());
    for (std::size_t j = 0; j < gc.count(); ++j) {
        // |C_G(g)| / |H| = |G| / (|class| * |H|)
        values.push_back(sums[j] * rat(Int(g->order() / gc.sizes[j]), Int(h->order())));
    }
    return {g, std::move(values), f.label.empty() ? "" : "ind(" + f.label + ")"};
}

ClassFn restrict_to(const ClassFn& f, const GroupPtr& h) {
    const ConjClasses& hc = h->classes();
    std::vector<Cyc> values;
    values.reserve(hc.count());
    for (std::size_t k = 0; k < hc.count(); ++k) values.push_back(f.at(hc.representatives[k]));
    return {h, std::move(values), f.label.empty() ? "" : "res(" + f.label + ")"};
}

bool is_irreducible_character(const ClassFn& f) {
    if (inner(f, f) != Cyc::one(1)) return false;
    Cyc deg = f.degree();
    if (!deg.is_rational()) return false;
    Rat d = deg.rational_value();
    return rat_is_integer(d) && d > 0;
}

namespace {
void check_orthonormal(const std::vector<ClassFn>& basis) {
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j) {
            Cyc p = inner(basis[i], basis[j]);
            Cyc want = i == j ? Cyc::one(1) : Cyc::zero(1);
            if (p != want) {
                std::ostringstream os;
                os << "basis is not orthonormal: <b" << i << ", b" << j
                   << "> = " << p.to_string();
                fail(ErrorKind::InvalidArgument, os.str());
            }
        }
}

std::vector<Cyc> decompose_unchecked(const ClassFn& f, const std::vector<ClassFn>& basis) {
    std::vector<Cyc> out;
    out.reserve(basis.size());
    for (const ClassFn& b : basis) out.push_back(inner(f, b));
    return out;
}
} // namespace

std::vector<Cyc> decompose(const ClassFn& f, const std::vector<ClassFn>& basis) {
    check_orthonormal(basis);
    return decompose_unchecked(f, basis);
}

CycMatrix gram_transition(const std::vector<ClassFn>& a, const std::vector<ClassFn>& b) {
    check_orthonormal(b);
    CycMatrix m;
    m.reserve(a.size());
    for (const ClassFn& f : a) m.push_back(decompose_unchecked(f, b));
    return m;
}

ClassFn normalize_for_basis(const ClassFn& f, const std::vector<ClassFn>& basis) {
    check_orthonormal(basis);
    Cyc n2 = inner(f, f);
    require(n2.is_rational(), ErrorKind::InvalidArgument,
            "norm of the function is not rational");
    auto s = rat_sqrt(n2.rational_value());
    require(s.has_value() && *s > 0, ErrorKind::InvalidArgument,
            "norm is not the square of a rational; normalization scalar lies "
            "outside the working field");
    ClassFn g = cf_scale(f, Cyc(1, Rat(1) / *s));

    std::vector<Cyc> coeffs = decompose_unchecked(g, basis);
    std::size_t first = coeffs.size();
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (!coeffs[i].is_zero()) {
            first = i;
            break;
        }
    require(first < coeffs.size(), ErrorKind::InvalidArgument,
            "function is orthogonal to the whole basis");
    Cyc c0 = coeffs[first];
    Cyc r2 = c0 * c0.conj();
    require(r2.is_rational(), ErrorKind::InvalidArgument,
            "leading coefficient has irrational absolute value");
    auto t = rat_sqrt(r2.rational_value());
    require(t.has_value() && *t > 0, ErrorKind::InvalidArgument,
            "no unimodular scalar in the working field makes the leading "
            "coefficient positive rational");
    // u = conj(c0)/|c0| is unimodular and u*c0 = |c0| > 0
    Cyc u = c0.conj() / *t;
    ClassFn out = cf_scale(g, u);
    out.label = f.label;
    return out;
}

std::vector<MatrixBlock> block_structure(const CycMatrix& m) {
    std::size_t n = m.size();
    for (const auto& row : m)
        require(row.size() == n, ErrorKind::InvalidArgument, "matrix must be square");

    std::vector<bool> row_seen(n, false), col_seen(n, false);
    std::vector<MatrixBlock> blocks;
    for (std::size_t start = 0; start < n; ++start) {
        if (row_seen[start]) continue;
        // BFS over the bipartite nonzero pattern
        std::vector<std::size_t> rows{start}, cols;
        row_seen[start] = true;
        std::vector<std::pair<bool, std::size_t>> queue{{true, start}};
        while (!queue.empty()) {
            auto [is_row, idx] = queue.back();
            queue.pop_back();
            if (is_row) {
                for (std::size_t j = 0; j < n; ++j)
                    if (!m[idx][j].is_zero() && !col_seen[j]) {
                        col_seen[j] = true;
                        cols.push_back(j);
                        queue.emplace_back(false, j);
                    }
            } else {
                for (std::size_t i = 0; i < n; ++i)
                    if (!m[i][idx].is_zero() && !row_seen[i]) {
                        row_seen[i] = true;
                        rows.push_back(i);
                        queue.emplace_back(true, i);
                    }
            }
        }
        std::sort(rows.begin(), rows.end());
        std::sort(cols.begin(), cols.end());
        MatrixBlock b;
        b.rows = std::move(rows);
        b.cols = std::move(cols);
        for (std::size_t i : b.rows)
            for (std::size_t j : b.cols)
                if (!m[i][j].is_zero()) b.entries.push_back(m[i][j].to_string());
        std::sort(b.entries.begin(), b.entries.end());
        blocks.push_back(std::move(b));
    }
    for (std::size_t j = 0; j < n; ++j)
        if (!col_seen[j]) {
            // an all-zero column is an isolated vertex of the pattern graph
            MatrixBlock b;
            b.cols.push_back(j);
            blocks.push_back(std::move(b));
        }
    return blocks;
}

nlohmann::json blocks_to_json(const std::vector<MatrixBlock>& blocks) {
    nlohmann::json arr = nlohmann::json::array();
    for (const MatrixBlock& b : blocks)
        arr.push_back({{"rows", b.rows}, {"cols", b.cols}, {"entries", b.entries}});
    return {{"blocks", arr}};
}

nlohmann::json matrix_to_json(const CycMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : m) {
        nlohmann::json row = nlohmann::json::array();
        for (const Cyc& c : r) row.push_back(c.to_json());
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string matrix_to_csv(const CycMatrix& m) {
    std::ostringstream os;
    for (const auto& r : m) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (j) os << ",";
            os << (r[j].is_rational() ? rat_to_string(r[j].rational_value())
                                      : r[j].to_string());
        }
        os << "\n";
    }
    return os.str();
}

} // namespace charfn
