#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "charfn/error.hpp"
#include "charfn/kirillov.hpp"

using namespace charfn;

namespace {

using Mat = std::array<std::array<std::uint32_t, 3>, 3>;

Mat mat_of(const GroupPtr& g, std::uint64_t x) {
    Mat m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = g->entry(x, i, j);
    return m;
}

Mat mat_mul(const FqDesc* f, const Mat& a, const Mat& b) {
    Mat r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            std::uint32_t s = 0;
            for (int k = 0; k < 3; ++k) s = f->add(s, f->mul(a[i][k], b[k][j]));
            r[i][j] = s;
        }
    return r;
}

Mat mat_sub(const FqDesc* f, const Mat& a, const Mat& b) {
    Mat r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = f->sub(a[i][j], b[i][j]);
    return r;
}

bool mat_is_zero(const Mat& a) {
    for (const auto& row : a)
        for (std::uint32_t v : row)
            if (v != 0) return false;
    return true;
}

// the log series evaluated directly on matrices
LieElt log_oracle(const GroupPtr& g, std::uint64_t x) {
    const FqDesc* f = g->ring.field;
    Mat id{};
    for (int i = 0; i < 3; ++i) id[i][i] = 1;
    Mat n = mat_sub(f, mat_of(g, x), id);
    Mat n2 = mat_mul(f, n, n);
    std::uint32_t inv2 = f->inv(f->add(1, 1));
    Mat lg{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) lg[i][j] = f->sub(n[i][j], f->mul(inv2, n2[i][j]));
    return {{lg[0][1], lg[1][2], lg[0][2]}};
}

// the coadjoint action worked out by hand: for g = [a,b,c],
// Ad(g^{-1}) adds (c x12 - a x23) to the x13 coordinate, so the dual map
// sends f to (f12 + c f13, f23 - a f13, f13).
LieFunctional coad_oracle(const GroupPtr& g, std::uint64_t x, const LieFunctional& f) {
    const FqDesc* k = g->ring.field;
    std::vector<std::uint32_t> t = g->coords(x);
    LieFunctional r;
    r.coords[0] = k->add(f.coords[0], k->mul(t[2], f.coords[2]));
    r.coords[1] = k->sub(f.coords[1], k->mul(t[0], f.coords[2]));
    r.coords[2] = f.coords[2];
    return r;
}

std::vector<LieFunctional> all_functionals(std::uint32_t q) {
    std::vector<LieFunctional> out;
    LieFunctional f;
    for (f.coords[0] = 0; f.coords[0] < q; ++f.coords[0])
        for (f.coords[1] = 0; f.coords[1] < q; ++f.coords[1])
            for (f.coords[2] = 0; f.coords[2] < q; ++f.coords[2]) out.push_back(f);
    return out;
}

// orbit partition computed with the closed-form action and no generators
std::set<std::vector<LieFunctional>> orbits_oracle(const GroupPtr& g) {
    std::set<std::vector<LieFunctional>> out;
    for (const LieFunctional& f : all_functionals(g->ring.field->q)) {
        std::set<LieFunctional> orbit;
        for (std::uint64_t x : g->elements()) orbit.insert(coad_oracle(g, x, f));
        out.insert(std::vector<LieFunctional>(orbit.begin(), orbit.end()));
    }
    return out;
}

bool same_values(const ClassFn& a, const ClassFn& b) {
    if (a.values.size() != b.values.size()) return false;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        if (a.values[i] != b.values[i]) return false;
    return true;
}

} // namespace

TEST_CASE("log matches the matrix series and inverts exp") {
    for (std::uint32_t q : {3u, 5u}) {
        GroupPtr g = make_heisenberg(gf(q, 1));
        NilLie L = nil_lie(g);
        const FqDesc* f = g->ring.field;
        Mat id{};
        for (int i = 0; i < 3; ++i) id[i][i] = 1;
        for (std::uint64_t x : g->elements()) {
            // nilpotency of g - 1
            Mat n = mat_sub(f, mat_of(g, x), id);
            CHECK(mat_is_zero(mat_mul(f, n, mat_mul(f, n, n))));
            // series oracle
            LieElt lg = lie_log(L, x);
            CHECK(lg == log_oracle(g, x));
            // round trips
            CHECK(lie_exp(L, lg) == x);
        }
        for (const LieFunctional& fn : all_functionals(q)) {
            LieElt x{{fn.coords[0], fn.coords[1], fn.coords[2]}}; // reuse as coords
            CHECK(lie_log(L, lie_exp(L, x)) == x);
        }
        CHECK(lie_log(L, g->id()) == LieElt{});
    }
}

TEST_CASE("log coordinates against the triangular basis") {
    GroupPtr g = make_heisenberg(gf(3, 1));
    NilLie L = nil_lie(g);
    const FqDesc* f = g->ring.field;
    std::uint32_t inv2 = f->inv(2);
    for (std::uint64_t x : g->elements()) {
        std::vector<std::uint32_t> t = g->coords(x); // a, b, c
        LieElt lg = lie_log(L, x);
        CHECK(lg.c[0] == t[0]);
        CHECK(lg.c[1] == t[2]);
        CHECK(lg.c[2] == f->sub(t[1], f->mul(f->mul(t[0], t[2]), inv2)));
    }
}

TEST_CASE("coadjoint action matches the closed form and is a right action") {
    for (std::uint32_t q : {3u, 5u}) {
        GroupPtr g = make_heisenberg(gf(q, 1));
        NilLie L = nil_lie(g);
        for (const LieFunctional& f : all_functionals(q))
            for (std::uint64_t x : g->elements())
                CHECK(coad_act(L, x, f) == coad_oracle(g, x, f));
        // composite of two actions is the action of the product
        const std::vector<std::uint64_t>& el = g->elements();
        LieFunctional f{{1, 2, 1}};
        for (std::size_t i = 0; i < el.size(); i += 7)
            for (std::size_t j = 0; j < el.size(); j += 5) {
                LieFunctional lhs = coad_act(L, el[i], coad_act(L, el[j], f));
                LieFunctional rhs = coad_act(L, g->mul(el[j], el[i]), f);
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("orbit partition matches the brute enumeration") {
    for (std::uint32_t q : {3u, 5u}) {
        GroupPtr g = make_heisenberg(gf(q, 1));
        NilLie L = nil_lie(g);
        std::vector<CoadOrbit> orbits = coad_orbits(L);

        std::set<std::vector<LieFunctional>> got;
        for (const CoadOrbit& o : orbits) got.insert(o.points);
        CHECK(got == orbits_oracle(g));

        // size census: q^2 singletons plus q-1 orbits of size q^2
        std::map<std::size_t, int> census;
        for (const CoadOrbit& o : orbits) census[o.points.size()]++;
        CHECK(census == std::map<std::size_t, int>{{1, static_cast<int>(q * q)},
                                                   {q * q, static_cast<int>(q - 1)}});
        CHECK(orbits.size() == q * q + q - 1);

        long total = 0;
        for (const CoadOrbit& o : orbits) {
            total += static_cast<long>(o.points.size());
            CHECK(g->order() % static_cast<long>(o.points.size()) == 0);
            // singletons are exactly the functionals with no central component
            CHECK((o.points.size() == 1) == (o.base.coords[2] == 0));
            for (const LieFunctional& pt : o.points) CHECK(pt.coords[2] == o.base.coords[2]);
        }
        CHECK(total == g->order());
    }

    // the zero functional is fixed
    GroupPtr g3 = make_heisenberg(gf(3, 1));
    CoadOrbit z = orbit_of(nil_lie(g3), LieFunctional{});
    CHECK(z.points.size() == 1);
    CHECK(z.points[0] == LieFunctional{});
}

TEST_CASE("orbit characters: linear family and the degree-q family") {
    GroupPtr g = make_heisenberg(gf(3, 1));
    NilLie L = nil_lie(g);
    const FqDesc* f = g->ring.field;

    // the zero orbit carries the trivial character
    CHECK(same_values(orbit_char(L, orbit_of(L, LieFunctional{})), trivial_character(g)));

    // singleton orbits pull back additive characters through [a,b,c] -> (a,c)
    for (std::uint32_t lam = 0; lam < 3; ++lam)
        for (std::uint32_t mu = 0; mu < 3; ++mu) {
            ClassFn got = orbit_char(L, orbit_of(L, LieFunctional{{lam, mu, 0}}));
            ClassFn want = from_pointwise(g, [&](std::uint64_t x) {
                std::vector<std::uint32_t> t = g->coords(x);
                return add_char_eval(f, 1, f->add(f->mul(lam, t[0]), f->mul(mu, t[2])));
            });
            CHECK(same_values(got, want));
            CHECK(got.degree() == Cyc::one(1));
        }

    // a central functional gives the degree-3 character: q psi(nu b) on the
    // center, zero elsewhere, and it is induced from the a = 0 wall
    for (std::uint32_t nu : {1u, 2u}) {
        ClassFn chi = orbit_char(L, orbit_of(L, LieFunctional{{0, 0, nu}}));
        CHECK(chi.degree() == Cyc(1, Rat(3)));
        for (std::uint64_t x : g->elements()) {
            std::vector<std::uint32_t> t = g->coords(x);
            if (t[0] == 0 && t[2] == 0)
                CHECK(chi.at(x) == add_char_eval(f, 1, f->mul(nu, t[1])) * Rat(3));
            else
                CHECK(chi.at(x).is_zero());
        }
        GroupPtr wall = subgroup_where(g, [&](std::uint64_t x) { return g->coords(x)[0] == 0; });
        ClassFn psi = from_pointwise(wall, [&](std::uint64_t x) {
            return add_char_eval(f, 1, f->mul(nu, wall->coords(x)[1]));
        });
        CHECK(same_values(chi, induce(psi, g)));
        CHECK(is_irreducible_character(chi));
    }
}

TEST_CASE("orbit characters do not depend on the base point") {
    GroupPtr g = make_heisenberg(gf(3, 1));
    NilLie L = nil_lie(g);
    CoadOrbit o = orbit_of(L, LieFunctional{{0, 0, 1}});
    REQUIRE(o.points.size() == 9);
    for (const LieFunctional& seed : o.points) {
        CoadOrbit o2 = orbit_of(L, seed);
        CHECK(o2.points == o.points);
        CHECK(same_values(orbit_char(L, o2), orbit_char(L, o)));
    }
}

TEST_CASE("degrees are the square roots of the orbit sizes") {
    GroupPtr g = make_heisenberg(gf(5, 1));
    NilLie L = nil_lie(g);
    for (const CoadOrbit& o : coad_orbits(L)) {
        long r = 1;
        while (r * r < static_cast<long>(o.points.size())) ++r;
        CHECK(orbit_char(L, o).degree() == Cyc(1, Rat(r)));
    }
}

TEST_CASE("bijection report") {
    GroupPtr g3 = make_heisenberg(gf(3, 1));
    VerificationReport r3 = verify_kirillov_bijection(nil_lie(g3));
    CHECK(r3.all_pass());
    CHECK(r3.suite == "heisenberg");
    CHECK(r3.params["q"] == 3);
    CHECK(r3.checks.size() == 5);
    CHECK(coad_orbits(nil_lie(g3)).size() == 11); // and 11 classes

    GroupPtr g5 = make_heisenberg(gf(5, 1));
    NilLie L5 = nil_lie(g5);
    VerificationReport r5 = verify_kirillov_bijection(L5);
    CHECK(r5.all_pass());
    std::vector<CoadOrbit> orbits = coad_orbits(L5);
    CHECK(orbits.size() == 29);
    std::map<std::string, int> degs;
    for (const CoadOrbit& o : orbits)
        degs[orbit_char(L5, o).degree().to_string()]++;
    CHECK(degs == std::map<std::string, int>{{"1/1", 25}, {"5/1", 4}});
    // 25 * 1 + 4 * 25 = 125
    CHECK(g5->order() == 125);

    nlohmann::json j = r3.to_json();
    CHECK(j["pass"] == true);
    CHECK(j["suite"] == "heisenberg");
    for (const auto& c : j["checks"]) CHECK(c["status"] == "pass");
    CHECK(r3.to_text().find("result: PASS") != std::string::npos);

    nlohmann::json oj = orbits_to_json(L5, orbits);
    CHECK(oj["q"] == 5);
    CHECK(oj["orbits"].size() == 29);
}

TEST_CASE("error paths") {
    try {
        make_heisenberg(gf(2, 1));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedCharacteristic);
    }

    GroupPtr u = make_u4(gf(2, 1));
    CHECK_THROWS_AS(nil_lie(u), Error); // wrong group shape

    GroupPtr g = make_heisenberg(gf(3, 1));
    NilLie L = nil_lie(g);
    CHECK_THROWS_AS(lie_log(L, ~0ull), Error);
    CHECK_THROWS_AS(lie_exp(L, LieElt{{7, 0, 0}}), Error);
    CHECK_THROWS_AS(orbit_char(L, CoadOrbit{}), Error);

    // gluing two orbits is rejected
    CoadOrbit a = orbit_of(L, LieFunctional{{1, 0, 0}});
    CoadOrbit b = orbit_of(L, LieFunctional{{2, 0, 0}});
    CoadOrbit glued;
    glued.base = a.base;
    glued.points = a.points;
    glued.points.insert(glued.points.end(), b.points.begin(), b.points.end());
    std::sort(glued.points.begin(), glued.points.end());
    CHECK_THROWS_AS(orbit_char(L, glued), Error);
}
