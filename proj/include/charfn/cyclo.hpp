#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "charfn/rat.hpp"

namespace charfn {

// An element of the cyclotomic field Q(zeta_N), stored in canonical
// reduced form modulo the N-th cyclotomic polynomial: a sparse list of
// (exponent, coefficient) pairs with exponents strictly below
// phi(N) = deg Phi_N, sorted by exponent, zero coefficients dropped.
// Two values of the same order are equal iff their representations are
// identical; mixed orders are compared after lifting to the lcm order.
//
// Display helpers go through floating point; every logic path is exact.
class Cyc {
public:
    using Term = std::pair<long, Rat>;

    // Zero of Q(zeta_N).
    explicit Cyc(long order = 1);
    // Rational constant viewed inside Q(zeta_N).
    Cyc(long order, const Rat& value);

    // zeta_N^k, k taken modulo N.
    static Cyc root(long order, long k);
    static Cyc zero(long order) { return Cyc(order); }
    static Cyc one(long order) { return Cyc(order, Rat(1)); }

    long order() const { return order_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    // Value as a rational; fails if not rational.
    Rat rational_value() const;

    Cyc operator-() const;
    Cyc operator+(const Cyc& o) const;
    Cyc operator-(const Cyc& o) const;
    Cyc operator*(const Cyc& o) const;
    Cyc& operator+=(const Cyc& o) { *this = *this + o; return *this; }
    Cyc& operator-=(const Cyc& o) { *this = *this - o; return *this; }
    Cyc& operator*=(const Cyc& o) { *this = *this * o; return *this; }

    Cyc operator*(const Rat& r) const;
    Cyc operator/(const Rat& r) const;

    // Complex conjugation (the Galois automorphism zeta -> zeta^{N-1}).
    Cyc conj() const;
    // Galois substitution zeta -> zeta^j, gcd(j, N) = 1.
    Cyc galois(long j) const;
    // Multiplicative inverse; fails on zero.
    Cyc inv() const;

    // Reinterpret inside Q(zeta_M) for N | M.
    Cyc lift_to_order(long new_order) const;

    // Semantic equality across orders (lifts to the lcm first).
    bool operator==(const Cyc& o) const;
    bool operator!=(const Cyc& o) const { return !(*this == o); }

    // Approximation for display only.
    std::complex<long double> to_complex() const;

    nlohmann::json to_json() const;
    static Cyc from_json(const nlohmann::json& j);
    // "num/den" when rational, otherwise a z^k polynomial rendering.
    std::string to_string() const;

private:
    long order_;
    std::vector<Term> terms_; // sorted by exponent, exponents < phi(order)

    void normalize(std::vector<Rat>&& dense);
    friend class CycContext;
};

inline Cyc cyc_root(long order, long k) { return Cyc::root(order, k); }
inline Cyc cyc_add(const Cyc& a, const Cyc& b) { return a + b; }
inline Cyc cyc_mul(const Cyc& a, const Cyc& b) { return a * b; }
inline Cyc cyc_neg(const Cyc& a) { return -a; }
inline Cyc cyc_conj(const Cyc& a) { return a.conj(); }
inline Cyc cyc_inv(const Cyc& a) { return a.inv(); }

// Decimal rendering of the numeric approximation, digits in [1, 15].
std::string cyc_to_complex_string(const Cyc& a, int digits);

// Euler phi and the coefficients of the N-th cyclotomic polynomial
// (ascending degree, monic), computed by dividing x^N - 1 by Phi_d for
// the proper divisors d.  Cached per order.
long euler_phi(long n);
const std::vector<Int>& cyclotomic_polynomial(long n);

} // namespace charfn
