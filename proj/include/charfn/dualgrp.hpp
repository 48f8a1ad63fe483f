#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "charfn/cyclo.hpp"
#include "charfn/gf.hpp"
#include "charfn/report.hpp"
#include "charfn/ringa.hpp"

namespace charfn {

// The abelian groups whose dual is modeled: points of a fixed algebraic
// group over the fields F_{q^m}, m running over the divisors of a bound.
enum class DualKind {
    k_add,    // (F_{q^m}, +)
    k_mul,    // F_{q^m}^*
    k_add2,   // (F_{q^m})^2, componentwise addition
    a2_units, // units of F_{q^m}[eps]/(eps^2)
    torus_a2, // pairs of such units (the diagonal torus)
};
const char* dual_kind_name(DualKind k);

// A tower of abelian groups G_m indexed by the divisors m of `bound`
// that fit the configured size limits, together with the q-power
// Frobenius F, subfield embeddings, and the relative norms
// N_{mn -> m}: x -> x F^m(x) ... F^{m(n-1)}(x).  Each level carries a
// fixed basis (independent generators of cyclic factors) and a full
// discrete-log table against it, so characters are exponent vectors.
class LevelSystem {
public:
    // Interned per (kind, p, a, bound); base field F_q with q = p^a.
    static const LevelSystem* get(DualKind kind, int p, int a, int bound);

    DualKind kind;
    int p = 0, a = 0, bound = 0;

    const std::vector<int>& levels() const { return levels_; }
    bool has_level(int m) const;
    void require_level(int m) const; // invalid-level when absent

    long order(int m) const;
    const std::vector<std::uint64_t>& elements(int m) const;
    std::uint64_t id(int m) const;
    std::uint64_t op(int m, std::uint64_t x, std::uint64_t y) const;
    std::uint64_t frob(int m, std::uint64_t x) const; // one q-power
    // from | to: include G_from into G_to
    std::uint64_t embed(int from, int to, std::uint64_t x) const;
    // to | from: the relative norm; from == to is the identity map
    std::uint64_t norm(int from, int to, std::uint64_t x) const;

    const std::vector<std::uint64_t>& basis(int m) const;
    const std::vector<long>& basis_orders(int m) const;
    long root_order(int m) const; // lcm of the basis orders
    // exponent vector of x against the level basis
    const std::vector<long>& dlog(int m, std::uint64_t x) const;
    std::string to_string(int m, std::uint64_t x) const;

    // elements of G_from with norm to G_to equal to the identity
    const std::vector<std::uint64_t>& norm_kernel(int from, int to) const;
    // some x at level `from` with norm(from, to, x) == basis(to)[j]
    std::uint64_t norm_preimage_of_basis(int from, int to, std::size_t j) const;

private:
    LevelSystem() = default;
    void build();
    struct LevelData {
        int m = 0;
        std::vector<std::uint64_t> elements;
        std::unordered_map<std::uint64_t, std::uint32_t> index;
        std::vector<std::uint64_t> gens;
        std::vector<long> orders;
        long lcm_order = 1;
        std::vector<std::vector<long>> logs; // per element index
        // keyed by the target divisor level
        std::map<int, std::vector<std::uint64_t>> kernels;
        std::map<int, std::vector<std::uint64_t>> basis_preimage;
    };
    LevelData build_level(int m) const;
    const LevelData& data(int m) const;
    std::map<int, LevelData> levels_data_;
    std::vector<int> levels_;
};

// A character of some G_m in canonical form: the exponent vector of a
// character that does not factor through the norm from any proper
// divisor level.  Equality is structural.
struct DualElt {
    const LevelSystem* system = nullptr;
    int level = 1;
    std::vector<long> e;

    bool operator==(const DualElt& o) const {
        return system == o.system && level == o.level && e == o.e;
    }
    bool operator!=(const DualElt& o) const { return !(*this == o); }
};

DualElt dual_unit(const LevelSystem* s);

// Reduce (level, exponents) to the minimal divisor level through which
// the character factors.
DualElt canonicalize(const LevelSystem* s, int level, std::vector<long> e);

// The character as a function on G_{eval_level}; the element's level
// must divide eval_level.  Values are indexed like elements(eval_level).
std::vector<Cyc> char_fn(const DualElt& d, int eval_level);
Cyc char_fn_at(const DualElt& d, int eval_level, std::uint64_t x);

// Product of equivalence classes: lift to the lcm level, multiply,
// canonicalize.  The lcm must be a materialized level, otherwise a
// level-bound error is raised rather than a fabricated answer.
DualElt dual_mul(const DualElt& d1, const DualElt& d2);

// The dual Frobenius psi -> psi o F, canonicalized.
DualElt dual_fstar(const DualElt& d);

// The inverse character psi -> conj(psi); stays at the same level.
DualElt dual_inv(const DualElt& d);

// All canonical elements of exactly this level, in exponent order.
std::vector<DualElt> canonical_at_level(const LevelSystem* s, int m);

// All elements of the bounded dual fixed by dual_fstar, ordered by
// (level, exponents).
std::vector<DualElt> dual_fixed_points(const LevelSystem* s);

// char_fn(dual_mul(d1,d2)) == char_fn(d1) * char_fn(d2) at the level
bool tensor_check(const DualElt& d1, const DualElt& d2, int level);

nlohmann::json dual_to_json(const DualElt& d);

// Bundled exhaustive checks over the additive, multiplicative, and
// two-step-unit systems with base field F_{p^a}: norm surjectivity with
// equal fibers on every materialized level pair, additivity of the
// discrete logs (hence multiplicativity of every exponent character),
// distinctness and completeness of the characteristic-function systems
// level by level, the isomorphism from the base dual onto the
// dual-Frobenius fixed points, and pointwise tensor compatibility.
VerificationReport dual_verify(int p, int a, int bound);

} // namespace charfn
