#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>

#include "charfn/cyclo.hpp"
#include "charfn/error.hpp"

using namespace charfn;

namespace {

// Independent oracle: the group algebra Q[Z/N], i.e. polynomials with
// exponents mod N and *no* reduction modulo the cyclotomic polynomial.
// Multiplication is cyclic convolution.  Projecting an oracle vector into
// Q(zeta_N) is a plain sum of library roots, so products of roots can be
// cross-checked against the library's reduced arithmetic.
struct GroupAlg {
    long n;
    std::vector<Rat> c;

    static GroupAlg mono(long n, long k) {
        GroupAlg g{n, std::vector<Rat>(static_cast<std::size_t>(n), Rat(0))};
        g.c[((k % n) + n) % n] = Rat(1);
        return g;
    }
    GroupAlg mul(const GroupAlg& o) const {
        GroupAlg out{n, std::vector<Rat>(static_cast<std::size_t>(n), Rat(0))};
        for (long i = 0; i < n; ++i) {
            if (c[i] == 0) continue;
            for (long j = 0; j < n; ++j) {
                if (o.c[j] == 0) continue;
                out.c[(i + j) % n] += c[i] * o.c[j];
            }
        }
        return out;
    }
    GroupAlg add(const GroupAlg& o) const {
        GroupAlg out = *this;
        for (long i = 0; i < n; ++i) out.c[i] += o.c[i];
        return out;
    }
    Cyc project() const {
        Cyc z = Cyc::zero(n);
        for (long i = 0; i < n; ++i)
            if (c[i] != 0) z += Cyc::root(n, i) * c[i];
        return z;
    }
};

std::complex<long double> root_numeric(long n, long k) {
    const long double pi = 3.14159265358979323846264338327950288L;
    long double arg = 2.0L * pi * static_cast<long double>(((k % n) + n) % n) / static_cast<long double>(n);
    return {std::cos(arg), std::sin(arg)};
}

} // namespace

TEST_CASE("cyclotomic polynomial table pins") {
    auto coeffs = [](long n) {
        std::vector<long> out;
        for (const Int& c : cyclotomic_polynomial(n)) out.push_back(c.get_si());
        return out;
    };
    CHECK(coeffs(1) == std::vector<long>{-1, 1});
    CHECK(coeffs(2) == std::vector<long>{1, 1});
    CHECK(coeffs(3) == std::vector<long>{1, 1, 1});
    CHECK(coeffs(4) == std::vector<long>{1, 0, 1});
    CHECK(coeffs(6) == std::vector<long>{1, -1, 1});
    CHECK(coeffs(12) == std::vector<long>{1, 0, -1, 0, 1});
    // First order with a coefficient of magnitude 2; the x^7 coefficient
    // of the 105th cyclotomic polynomial is -2.
    CHECK(coeffs(105)[7] == -2);
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(12) == 4);
    CHECK(euler_phi(4095) == 1728);
}

TEST_CASE("frozen arithmetic examples") {
    // zeta_3 + zeta_3^2 = -1
    Cyc z3 = Cyc::root(3, 1);
    CHECK(z3 + Cyc::root(3, 2) == Cyc(3, Rat(-1)));
    // i^2 = -1 at order 4
    Cyc i = Cyc::root(4, 1);
    CHECK(i * i == Cyc(4, Rat(-1)));
    // z * conj(z) = 1 for z = zeta_5, cross-checked against the
    // convolution oracle: x^1 * x^4 = x^5 = 1 mod (x^5 - 1).
    Cyc z5 = Cyc::root(5, 1);
    CHECK(z5 * z5.conj() == Cyc::one(5));
    GroupAlg oracle = GroupAlg::mono(5, 1).mul(GroupAlg::mono(5, 4));
    CHECK(oracle.project() == Cyc::one(5));
}

TEST_CASE("products of roots match the convolution oracle") {
    std::mt19937 rng(20240817);
    for (long n : {2L, 3L, 4L, 5L, 6L, 8L, 9L, 12L, 15L, 16L, 21L, 24L, 36L, 60L}) {
        for (int rep = 0; rep < 8; ++rep) {
            long a = static_cast<long>(rng() % static_cast<unsigned long>(n));
            long b = static_cast<long>(rng() % static_cast<unsigned long>(n));
            Cyc lib = Cyc::root(n, a) * Cyc::root(n, b);
            Cyc ora = GroupAlg::mono(n, a).mul(GroupAlg::mono(n, b)).project();
            CHECK(lib == ora);
        }
        // Sums of roots multiplied as full vectors.
        GroupAlg u = GroupAlg::mono(n, 1).add(GroupAlg::mono(n, n - 1));
        GroupAlg v = GroupAlg::mono(n, 2).add(GroupAlg::mono(n, 0));
        Cyc lib = u.project() * v.project();
        CHECK(lib == u.mul(v).project());
    }
}

TEST_CASE("ring axioms on sampled triples") {
    std::mt19937 rng(7);
    auto sample = [&](long n) {
        Cyc z = Cyc::zero(n);
        int terms = 1 + static_cast<int>(rng() % 3);
        for (int t = 0; t < terms; ++t) {
            long e = static_cast<long>(rng() % static_cast<unsigned long>(n));
            long num = static_cast<long>(rng() % 7) - 3;
            long den = 1 + static_cast<long>(rng() % 4);
            z += Cyc::root(n, e) * rat(num, den);
        }
        return z;
    };
    for (long n : {2L, 3L, 5L, 8L, 12L, 30L, 45L, 60L}) {
        for (int rep = 0; rep < 6; ++rep) {
            Cyc a = sample(n), b = sample(n), c = sample(n);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + (-a) == Cyc::zero(n));
            CHECK(a * Cyc::one(n) == a);
        }
    }
}

TEST_CASE("canonical form properties") {
    // Exponents stay below phi(N) and zero coefficients are dropped.
    for (long n : {6L, 12L, 30L}) {
        long phi = euler_phi(n);
        for (long k = 0; k < n; ++k) {
            Cyc z = Cyc::root(n, k);
            for (const auto& t : z.terms()) {
                CHECK(t.first >= 0);
                CHECK(t.first < phi);
                CHECK(t.second != 0);
            }
        }
    }
    // Serialization round-trip preserves the canonical form.
    Cyc z = Cyc::root(12, 7) * rat(3, 2) + Cyc::root(12, 2) - Cyc(12, rat(1, 3));
    CHECK(Cyc::from_json(z.to_json()) == z);
    // The sum of all N-th roots of unity vanishes (N > 1).
    for (long n : {2L, 3L, 7L, 10L, 12L}) {
        Cyc s = Cyc::zero(n);
        for (long k = 0; k < n; ++k) s += Cyc::root(n, k);
        CHECK(s.is_zero());
    }
}

TEST_CASE("conjugation and inversion") {
    std::mt19937 rng(99);
    for (long n : {3L, 4L, 5L, 7L, 9L, 16L, 21L}) {
        for (long k = 0; k < n; ++k) {
            Cyc z = Cyc::root(n, k);
            CHECK(z.conj().conj() == z);
            CHECK(z * z.conj() == Cyc::one(n));  // roots of unity are unimodular
            CHECK(z * z.inv() == Cyc::one(n));
        }
        // conj is a ring automorphism and fixes rationals
        Cyc a = Cyc::root(n, 1) + Cyc(n, rat(2, 3));
        Cyc b = Cyc::root(n, n - 1) * rat(-1, 2);
        CHECK((a * b).conj() == a.conj() * b.conj());
        CHECK((a + b).conj() == a.conj() + b.conj());
        CHECK(Cyc(n, rat(5, 7)).conj() == Cyc(n, rat(5, 7)));
        // inversion of a non-monomial
        Cyc w = Cyc::one(n) + Cyc::root(n, 1);
        if (!w.is_zero()) CHECK(w * w.inv() == Cyc::one(n));
        (void)rng;
    }
}

TEST_CASE("order lifting is a field embedding and round-trips") {
    for (long n : {2L, 3L, 4L, 6L, 10L}) {
        for (long mult : {2L, 3L, 6L}) {
            long m = n * mult;
            Cyc a = Cyc::root(n, 1) + Cyc(n, rat(1, 2));
            Cyc b = Cyc::root(n, n - 1) * rat(2, 5);
            CHECK(a.lift_to_order(m) + b.lift_to_order(m) == (a + b).lift_to_order(m));
            CHECK(a.lift_to_order(m) * b.lift_to_order(m) == (a * b).lift_to_order(m));
            // semantic equality across orders: the lift equals the original
            CHECK(a.lift_to_order(m) == a);
        }
    }
    // zeta_6 lifted to order 12 is zeta_12^2
    CHECK(Cyc::root(6, 1).lift_to_order(12) == Cyc::root(12, 2));
}

TEST_CASE("galois substitution") {
    for (long n : {5L, 7L, 12L}) {
        Cyc z = Cyc::root(n, 1) + Cyc::root(n, 3) * rat(1, 2);
        for (long j = 1; j < n; ++j) {
            if (std::gcd(j, n) != 1) continue;
            Cyc w = Cyc::root(n, 2);
            CHECK((z * w).galois(j) == z.galois(j) * w.galois(j));
        }
        CHECK(z.galois(1) == z);
    }
}

TEST_CASE("numeric display channel stays near the exact value") {
    std::mt19937 rng(5);
    for (long n : {3L, 8L, 15L, 40L}) {
        for (int rep = 0; rep < 4; ++rep) {
            long a = static_cast<long>(rng() % static_cast<unsigned long>(n));
            long b = static_cast<long>(rng() % static_cast<unsigned long>(n));
            Cyc z = Cyc::root(n, a) * Cyc::root(n, b);
            std::complex<long double> direct = root_numeric(n, a) * root_numeric(n, b);
            CHECK(std::abs(z.to_complex() - direct) < 1e-12L);
        }
    }
    CHECK(cyc_to_complex_string(Cyc::root(4, 1), 3) == "0.000 + 1.000i");
}

TEST_CASE("error paths") {
    CHECK_THROWS_AS(Cyc(0), Error);
    CHECK_THROWS_AS(Cyc(-3), Error);
    CHECK_THROWS_AS(Cyc(1 << 20), Error); // beyond the configured bound
    CHECK_THROWS_AS(Cyc::zero(5).inv(), Error);
    CHECK_THROWS_AS(Cyc::root(5, 1).galois(5), Error);
    CHECK_THROWS_AS(cyc_to_complex_string(Cyc::one(3), 0), Error);
    CHECK_THROWS_AS(Cyc::root(8, 1).rational_value(), Error);
    try {
        Cyc(0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidOrder);
    }
    try {
        Cyc(1 << 20);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ResourceLimit);
    }
}
