#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "charfn/cyclo.hpp"

namespace charfn {

// A finite field F_{p^a}.  Elements are codes in [0, p^a): the base-p
// digit vector of a code gives the coefficients of a polynomial in the
// canonical root w of the modulus, constant digit first.
//
// The modulus is deterministic: the lexicographically smallest monic
// irreducible polynomial of degree a over F_p whose root generates the
// multiplicative group (smallest irreducible as a fallback, which never
// triggers for the degrees in use).  Multiplication runs on log/antilog
// tables; addition is an xor in characteristic 2 and a cached table or
// digitwise sum otherwise.
struct FqDesc {
    int p = 0;
    int a = 0;
    long q = 0;                // p^a
    std::vector<int> modulus;  // length a+1, monic, coefficients in [0, p)
    std::uint32_t gen = 0;     // multiplicative generator (the root w when primitive)

    std::uint32_t add(std::uint32_t x, std::uint32_t y) const;
    std::uint32_t sub(std::uint32_t x, std::uint32_t y) const;
    std::uint32_t neg(std::uint32_t x) const;
    std::uint32_t mul(std::uint32_t x, std::uint32_t y) const;
    std::uint32_t inv(std::uint32_t x) const;       // not-a-unit on zero
    std::uint32_t pow(std::uint32_t x, long e) const;
    std::uint32_t frob(std::uint32_t x, int k = 1) const; // x -> x^{p^k}
    long dlog(std::uint32_t x) const;               // not-a-unit on zero

    std::string to_string(std::uint32_t x) const;   // polynomial in w

    // internal tables
    std::vector<std::uint32_t> exp_;   // size q-1, exp_[i] = gen^i
    std::vector<std::int32_t> dlog_;   // size q, dlog_[0] = -1
    std::vector<std::uint32_t> addt_;  // full add table for small odd-p fields
};

// Shared registry; descriptors are interned per (p, a).
const FqDesc* gf(int p, int a);

// Coherent family of subfield embeddings for all divisors of `top`,
// anchored in F_{p^top}: every embedding between divisor levels is the
// restriction of the inclusion into the anchor, so compositions along
// any chain inside one tower agree.
class FieldTower {
public:
    static const FieldTower& get(int p, int top);

    const FqDesc* field(int level) const;
    // x from F_{p^from} into F_{p^to}; from | to | top.
    std::uint32_t embed(int from, int to, std::uint32_t x) const;
    // Partial inverse of embed; invalid-argument if x is not in the image.
    std::uint32_t project(int from, int to, std::uint32_t x) const;
    bool in_subfield(int from, int to, std::uint32_t x) const;
    // Common coordinates for all levels: the code of x inside F_{p^top}.
    std::uint32_t to_anchor(int level, std::uint32_t x) const;

    int p() const { return p_; }
    int top() const { return top_; }

private:
    FieldTower(int p, int top);
    int p_, top_;
    std::map<int, const FqDesc*> fields_;
    std::map<int, std::vector<std::uint32_t>> into_anchor_;
    std::map<int, std::unordered_map<std::uint32_t, std::uint32_t>> from_anchor_;
};

// Trace and norm down to the subfield F_{p^sub_a}; the result is a code
// of that subfield.  sub_a must divide f->a.
std::uint32_t gf_trace(const FqDesc* f, int sub_a, std::uint32_t x);
std::uint32_t gf_norm(const FqDesc* f, int sub_a, std::uint32_t x);

// Additive character psi_t(x) = zeta_p ^ Tr_{F/F_p}(t x).  t = 1 is the
// reference character psi_0 of the whole library; over F_2 it takes the
// values +1 and -1.  The _exp variants return the exponent of zeta_p.
long add_char_exp(const FqDesc* f, std::uint32_t t, std::uint32_t x);
Cyc add_char_eval(const FqDesc* f, std::uint32_t t, std::uint32_t x);

// Multiplicative character chi_j(x) = zeta_{q-1} ^ (j * dlog x) on the
// unit group; evaluation at zero is an error.
long mul_char_exp(const FqDesc* f, long j, std::uint32_t x);
Cyc mul_char_eval(const FqDesc* f, long j, std::uint32_t x);

// Convenience value type used by the worked-example modules.
struct FqElem {
    const FqDesc* f = nullptr;
    std::uint32_t code = 0;

    bool is_zero() const { return code == 0; }
    friend FqElem operator+(FqElem x, FqElem y) { return {x.f, x.f->add(x.code, y.code)}; }
    friend FqElem operator-(FqElem x, FqElem y) { return {x.f, x.f->sub(x.code, y.code)}; }
    friend FqElem operator*(FqElem x, FqElem y) { return {x.f, x.f->mul(x.code, y.code)}; }
    friend FqElem operator-(FqElem x) { return {x.f, x.f->neg(x.code)}; }
    FqElem inv() const { return {f, f->inv(code)}; }
    friend bool operator==(FqElem x, FqElem y) { return x.f == y.f && x.code == y.code; }
    friend bool operator!=(FqElem x, FqElem y) { return !(x == y); }
};

} // namespace charfn
