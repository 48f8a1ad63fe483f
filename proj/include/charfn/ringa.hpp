#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "charfn/gf.hpp"

namespace charfn {

// Truncated polynomial ring A_r = F_{q^m}[eps]/(eps^r).  The ground field
// F_q is the base of the coefficientwise Frobenius; the coefficient field
// F_{q^m} is an extension of it inside one tower.  eps is a formal basis
// index: elements are plain coefficient vectors, constant first.
struct ARDesc {
    const FqDesc* base = nullptr; // F_{q^m}
    int r = 0;                    // truncation order, >= 1
    long q = 0;                   // ground-field order p^qa
    int qa = 0;

    int m() const { return base->a / qa; }
    // number of elements (q^m)^r; guarded against overflow at construction
    std::uint64_t size() const;
    std::uint64_t unit_count() const; // (q^m)^{r-1} (q^m - 1)
};

// Interned registry: the ring A_r over F_{p^{qa*m}} with ground field p^qa.
const ARDesc* ar_ring(int p, int qa, int m, int r);

struct ARElem {
    const ARDesc* ring = nullptr;
    std::vector<std::uint32_t> c; // length r, codes in the coefficient field

    friend bool operator==(const ARElem& x, const ARElem& y) {
        return x.ring == y.ring && x.c == y.c;
    }
    friend bool operator!=(const ARElem& x, const ARElem& y) { return !(x == y); }
};

ARElem ar_zero(const ARDesc* d);
ARElem ar_one(const ARDesc* d);
ARElem ar_eps(const ARDesc* d); // requires r >= 2
ARElem ar_from_coeffs(const ARDesc* d, std::vector<std::uint32_t> coeffs);

ARElem ar_add(const ARElem& x, const ARElem& y);
ARElem ar_sub(const ARElem& x, const ARElem& y);
ARElem ar_neg(const ARElem& x);
ARElem ar_mul(const ARElem& x, const ARElem& y);
ARElem ar_inv(const ARElem& x); // not-a-unit when the constant term is zero
ARElem ar_pow(const ARElem& x, long e);
bool ar_is_unit(const ARElem& x);

// Coefficientwise q-power Frobenius, iterated `times`; a ring automorphism
// whose fixed points at level m are the elements with all coefficients in
// the ground field.
ARElem ar_frobq(const ARElem& x, int times = 1);

// Norm from level m(x) down to the divisor level down_m: the product
// x * F(x) * ... * F^{n-1}(x) with F the level-down_m Frobenius, returned
// as an element over F_{q^down_m} (coefficients projected along the tower).
ARElem ar_norm(const ARElem& x, int down_m);

// Mixed-radix codes for enumeration: c[0] + c[1]*Q + ... with Q = |base|.
std::uint64_t ar_code(const ARElem& x);
ARElem ar_from_code(const ARDesc* d, std::uint64_t code);

// Full unit-group enumeration; resource-limit error beyond the configured
// group-order bound.
std::vector<ARElem> ar_units(const ARDesc* d);

std::string ar_to_string(const ARElem& x);
nlohmann::json ar_to_json(const ARElem& x); // nested digit arrays

} // namespace charfn
