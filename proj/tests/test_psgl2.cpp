#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "charfn/error.hpp"
#include "charfn/psgl2.hpp"

using namespace charfn;

namespace {

// counts the free stable lines of g by scanning every primitive vector
// and dividing out the unit scalings; never consults the canonical
// line list
long brute_fiber_count(const FlagGeom* L, std::uint64_t g) {
    const GroupPtr& G = L->group;
    const CoeffRing& R = G->ring;
    long S = R.size();
    std::uint32_t g00 = G->entry(g, 0, 0), g01 = G->entry(g, 0, 1);
    std::uint32_t g10 = G->entry(g, 1, 0), g11 = G->entry(g, 1, 1);
    long stable = 0, units = 0;
    for (std::uint32_t u = 0; u < S; ++u)
        if (R.is_unit(u)) ++units;
    for (std::uint32_t v0 = 0; v0 < S; ++v0)
        for (std::uint32_t v1 = 0; v1 < S; ++v1) {
            bool u0 = R.is_unit(v0), u1 = R.is_unit(v1);
            if (!u0 && !u1) continue;
            std::uint32_t w0 = R.add(R.mul(g00, v0), R.mul(g01, v1));
            std::uint32_t w1 = R.add(R.mul(g10, v0), R.mul(g11, v1));
            std::uint32_t al = u0 ? R.mul(w0, R.inv(v0)) : R.mul(w1, R.inv(v1));
            if (R.mul(al, v0) == w0 && R.mul(al, v1) == w1) ++stable;
        }
    REQUIRE(stable % units == 0);
    return stable / units;
}

// elementwise self inner product, bypassing the classwise shortcut
Cyc brute_norm(const ClassFn& f) {
    Cyc acc = Cyc::zero(1);
    for (std::uint64_t g : f.group->elements()) {
        Cyc v = f.at(g);
        acc += v * v.conj();
    }
    return acc * rat(Int(1), Int(f.group->order()));
}

// the stratum sizes implied by the classification, in closed form
SupportCounts closed_form(long Q) {
    long q3 = Q * Q * Q, q4 = q3 * Q;
    SupportCounts s;
    s.split_rss = (Q - 1) * (Q - 2) / 2 * Q * (Q + 1) * q4;
    s.nonsplit_rss = (Q * Q - Q) / 2 * (Q * Q - Q) * q4;
    s.case2 = (Q - 1) * (Q * Q - 1) * q3;
    s.non_tri = (Q - 1) * (Q * Q - 1) * (q4 - q3);
    s.g1_split = (Q - 1) * (Q * Q * (Q * Q - 1) / 2);
    s.g1_nonsplit = (Q - 1) * (Q * Q * (Q - 1) * (Q - 1) / 2);
    s.case4 = (Q - 1) * (Q * (Q * Q - 1));
    s.g2 = Q * (Q - 1);
    s.total = s.g0() + s.non_tri + s.g1() + s.g2;
    return s;
}

bool counts_equal(const SupportCounts& a, const SupportCounts& b) {
    return a.split_rss == b.split_rss && a.nonsplit_rss == b.nonsplit_rss &&
           a.case2 == b.case2 && a.non_tri == b.non_tri && a.g1_split == b.g1_split &&
           a.g1_nonsplit == b.g1_nonsplit && a.case4 == b.case4 && a.g2 == b.g2 &&
           a.total == b.total;
}

ErrorKind kind_of(const std::function<void()>& body) {
    try {
        body();
    } catch (const Error& e) {
        return e.kind();
    }
    REQUIRE(false);
    return ErrorKind::Internal;
}

} // namespace

TEST_CASE("unit character towers and regularity") {
    const FqDesc* f2 = gf(2, 1);
    const LevelSystem* u2 = unit_tower(f2, 2);
    CHECK(unit_chars(u2, 1).size() == 2);  // |units of F2[eps]| = 2
    CHECK(unit_chars(u2, 2).size() == 12); // |units of F4[eps]| = 12

    // equal pairs are never regular; at q = 2 level 1 regularity is
    // exactly inequality, giving 2 regular pairs of 4
    std::vector<TorusChar> all2 = all_torus_chars(u2, 1);
    CHECK(all2.size() == 4);
    long reg2 = 0;
    for (const TorusChar& t : all2) {
        if (t.psi1 == t.psi2) CHECK(!t.regular);
        if (t.regular) ++reg2;
        CHECK(is_regular(u2, 1, t.psi1, t.psi2) == t.regular);
        CHECK(swap_torus_char(t).regular == t.regular);
    }
    CHECK(reg2 == 2);
    CHECK(regular_chars(u2, 1).size() == 2);

    const FqDesc* f3 = gf(3, 1);
    const LevelSystem* u3 = unit_tower(f3, 1);
    CHECK(unit_chars(u3, 1).size() == 6);
    std::vector<TorusChar> all3 = all_torus_chars(u3, 1);
    CHECK(all3.size() == 36);
    long reg3 = 0, equal_pairs = 0, nonreg_distinct = 0;
    for (const TorusChar& t : all3) {
        if (t.psi1 == t.psi2) {
            CHECK(!t.regular);
            ++equal_pairs;
        } else if (!t.regular) {
            ++nonreg_distinct;
        }
        if (t.regular) ++reg3;
    }
    CHECK(reg3 == 24);
    // the ratio is trivial on the order-3 congruence subgroup for 2 of
    // the 6 characters, leaving 6 non-regular unequal pairs
    CHECK(equal_pairs == 6);
    CHECK(nonreg_distinct == 6);

    // raising the level via norm precomposition preserves regularity
    for (const TorusChar& t : all2) {
        TorusChar up = raise_torus_char(t, 2);
        CHECK(up.level == 2);
        CHECK(up.regular == t.regular);
    }
}

TEST_CASE("induced characters from the triangular subgroup at q = 2") {
    const FqDesc* f2 = gf(2, 1);
    const LevelSystem* u2 = unit_tower(f2, 2);
    const FlagGeom* L = flag_geom(f2, 1);
    CHECK(L->group->order() == 96);
    CHECK(L->cosets.size() == 6);
    CHECK(L->lines.size() == 6);

    for (const TorusChar& t : all_torus_chars(u2, 1)) {
        ClassFn c = induced_c(L, t);
        CHECK(c.degree() == Cyc(1, rat(6)));
        Cyc n = brute_norm(c);
        CHECK(inner(c, c) == n);
        if (t.regular) {
            CHECK(n == Cyc::one(1));
            CHECK(is_irreducible_character(c));
        } else {
            // equal pairs: three orbits intertwine
            CHECK(n == Cyc(1, rat(3)));
        }
    }
}

TEST_CASE("induced norms at q = 3 distinguish the three pair types") {
    const FqDesc* f3 = gf(3, 1);
    const LevelSystem* u3 = unit_tower(f3, 1);
    const FlagGeom* L = flag_geom(f3, 1);
    CHECK(L->group->order() == 3888);
    CHECK(L->cosets.size() == 12);

    bool saw_nonreg_distinct = false;
    for (const TorusChar& t : all_torus_chars(u3, 1)) {
        ClassFn c = induced_c(L, t);
        CHECK(c.degree() == Cyc(1, rat(12)));
        Cyc n = inner(c, c);
        if (t.regular) {
            CHECK(n == Cyc::one(1));
        } else if (t.psi1 == t.psi2) {
            CHECK(n == Cyc(1, rat(3)));
        } else {
            CHECK(n == Cyc(1, rat(2)));
            if (!saw_nonreg_distinct) {
                // pin one reducible-with-two-pieces witness elementwise
                CHECK(brute_norm(c) == Cyc(1, rat(2)));
                saw_nonreg_distinct = true;
            }
        }
    }
    CHECK(saw_nonreg_distinct);
}

TEST_CASE("the fixed-flag sum equals the induced character everywhere") {
    const FqDesc* f2 = gf(2, 1);
    const LevelSystem* u2 = unit_tower(f2, 2);
    const FlagGeom* L = flag_geom(f2, 1);

    for (const TorusChar& t : all_torus_chars(u2, 1)) {
        ClassFn c = induced_c(L, t);
        for (std::uint64_t g : L->group->elements())
            CHECK(chi_fixed_point(L, t, g) == c.at(g));
        // the identity counts the fixed flags
        CHECK(chi_fixed_point(L, t, L->group->id()) == Cyc(1, rat(6)));
        // scalars keep every flag and scale by the product character
        for (std::uint64_t u : u2->elements(1)) {
            std::uint64_t zg = L->group->from_entries(
                {static_cast<std::uint32_t>(u), 0, 0, static_cast<std::uint32_t>(u)});
            Cyc want = char_fn_at(t.psi1, 1, static_cast<std::uint32_t>(u)) *
                       char_fn_at(t.psi2, 1, static_cast<std::uint32_t>(u)) * rat(6);
            CHECK(c.at(zg) == want);
        }
        ClassFn chi = chi_fn(L, t);
        CHECK(chi.values == c.values);
    }

    const FqDesc* f3 = gf(3, 1);
    const LevelSystem* u3 = unit_tower(f3, 1);
    const FlagGeom* L3 = flag_geom(f3, 1);
    const ConjClasses& cc = L3->group->classes();
    for (const TorusChar& t : all_torus_chars(u3, 1)) {
        ClassFn c = induced_c(L3, t);
        for (std::size_t k = 0; k < cc.count(); ++k)
            CHECK(chi_fixed_point(L3, t, cc.representatives[k]) == c.values[k]);
    }
}

TEST_CASE("swapping the torus pair fixes the induced character") {
    const FqDesc* f3 = gf(3, 1);
    const LevelSystem* u3 = unit_tower(f3, 1);
    const FlagGeom* L = flag_geom(f3, 1);
    std::vector<DualElt> cs = unit_chars(u3, 1);
    std::size_t n = cs.size();

    std::vector<ClassFn> table;
    std::vector<bool> regs;
    table.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            TorusChar t = make_torus_char(u3, 1, cs[i], cs[j]);
            table.push_back(induced_c(L, t));
            regs.push_back(t.regular);
        }
    std::set<std::string> distinct;
    long reg_count = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            CHECK(table[i * n + j].values == table[j * n + i].values);
            if (regs[i * n + j]) {
                ++reg_count;
                std::string key;
                for (const Cyc& v : table[i * n + j].values) key += v.to_string() + ";";
                distinct.insert(key);
            }
        }
    CHECK(reg_count == 24);
    CHECK(distinct.size() == 12); // pairs and their swaps collapse two to one
}

TEST_CASE("stable lines carry determinant-paired eigenvalue scalars") {
    const FqDesc* f2 = gf(2, 1);
    const FlagGeom* L = flag_geom(f2, 1);
    const GroupPtr& G = L->group;
    const CoeffRing& R = G->ring;

    for (std::uint64_t g : G->elements()) {
        std::uint32_t det = R.sub(R.mul(G->entry(g, 0, 0), G->entry(g, 1, 1)),
                                  R.mul(G->entry(g, 0, 1), G->entry(g, 1, 0)));
        auto scal = stable_line_scalars(L, g);
        for (const auto& [a1, a2] : scal) {
            CHECK(R.is_unit(a1));
            CHECK(R.mul(a1, a2) == det);
        }
        CHECK(static_cast<long>(scal.size()) == brute_fiber_count(L, g));
        CHECK(fiber_point_count(L, g) == static_cast<long>(scal.size()));
    }

    const FqDesc* f3 = gf(3, 1);
    const FlagGeom* L3 = flag_geom(f3, 1);
    for (std::uint64_t g : L3->group->classes().representatives)
        CHECK(fiber_point_count(L3, g) == brute_fiber_count(L3, g));
}

TEST_CASE("fiber classification shapes over the two-step ring") {
    const FqDesc* f2 = gf(2, 1);
    const FlagGeom* L1 = flag_geom(f2, 1);
    const FlagGeom* L2 = flag_geom(f2, 2);
    const GroupPtr& G = L1->group;

    // companion lift of an irreducible quadratic: no rational stable
    // line until the eigenvalues appear at level 2
    std::uint64_t comp = G->from_entries({0, 1, 1, 1});
    CHECK(fiber_class(L1, comp) == FiberClass{0, false});
    FiberReport fr = classify_fiber(f2, 1, comp, {1, 2});
    CHECK(fr.point_counts[1] == 0);
    CHECK(fr.point_counts[2] == 2);
    CHECK(predicted_fiber_count(fr.cls, 2, 1) == 0);
    CHECK(predicted_fiber_count(fr.cls, 2, 2) == 2);

    // unipotent with unit off-diagonal entry: an affine line of size q
    std::uint64_t uni = G->from_entries({1, 1, 0, 1});
    CHECK(fiber_class(L1, uni) == FiberClass{2, true});
    CHECK(fiber_point_count(L1, uni) == 2);
    CHECK(fiber_point_count(L2, embed_gl2(f2, 1, 2, uni)) == 4);

    // non-semisimple reduction whose eigenvalue does not lift: the
    // fiber stays empty at every level
    std::uint64_t outside = G->from_entries({0, 1, 1, 2});
    CHECK(fiber_class(L1, outside) == FiberClass{6, false});
    CHECK(fiber_point_count(L1, outside) == 0);
    CHECK(fiber_point_count(L2, embed_gl2(f2, 1, 2, outside)) == 0);
    CHECK(brute_fiber_count(L2, embed_gl2(f2, 1, 2, outside)) == 0);

    // ring scalar: every line is stable, q(q+1) of them
    std::uint64_t zc = G->from_entries({3, 0, 0, 3}); // (1 + eps) id
    CHECK(fiber_class(L1, zc) == FiberClass{5, true});
    CHECK(fiber_point_count(L1, zc) == 6);
    CHECK(fiber_point_count(L2, embed_gl2(f2, 1, 2, zc)) == 20);

    // scalar reduction with nilpotent scaled eps part: one affine line
    std::uint64_t nil = G->from_entries({1, 2, 0, 1});
    CHECK(fiber_class(L1, nil) == FiberClass{4, true});
    CHECK(fiber_point_count(L1, nil) == 2);

    // scalar reduction with split semisimple eps part: two affine lines
    std::uint64_t sp = G->from_entries({1, 0, 0, 3});
    CHECK(fiber_class(L1, sp) == FiberClass{3, true});
    CHECK(fiber_point_count(L1, sp) == 4);

    // scalar reduction with irreducible eps part: empty here, two
    // affine lines at level 2
    std::uint64_t nsp = G->from_entries({1, 2, 2, 3});
    CHECK(fiber_class(L1, nsp) == FiberClass{3, false});
    CHECK(fiber_point_count(L1, nsp) == 0);
    CHECK(fiber_point_count(L2, embed_gl2(f2, 1, 2, nsp)) == 8);

    // predictions hold on every class at both materialized fields
    for (const FlagGeom* L : {L1, L2}) {
        long Q = L->ring->base->q;
        for (std::uint64_t g : L->group->classes().representatives)
            CHECK(fiber_point_count(L, g) == predicted_fiber_count(fiber_class(L, g), Q, 1));
    }
    const FqDesc* f3 = gf(3, 1);
    const FlagGeom* L3 = flag_geom(f3, 1);
    for (std::uint64_t g : L3->group->classes().representatives)
        CHECK(fiber_point_count(L3, g) == predicted_fiber_count(fiber_class(L3, g), 3, 1));
}

TEST_CASE("split fibers swap their two eigenvalue pairs") {
    const FqDesc* f3 = gf(3, 1);
    const LevelSystem* u3 = unit_tower(f3, 1);
    const FlagGeom* L = flag_geom(f3, 1);
    const GroupPtr& G = L->group;

    std::uint64_t g = G->from_entries({1, 0, 0, 2});
    REQUIRE(fiber_class(L, g) == FiberClass{1, true});
    auto scal = stable_line_scalars(L, g);
    REQUIRE(scal.size() == 2);
    CHECK(scal[0].first == scal[1].second);
    CHECK(scal[0].second == scal[1].first);
    CHECK(scal[0].first != scal[1].first);

    for (const TorusChar& t : all_torus_chars(u3, 1)) {
        Cyc direct = char_fn_at(t.psi1, 1, scal[0].first) * char_fn_at(t.psi2, 1, scal[0].second) +
                     char_fn_at(t.psi1, 1, scal[1].first) * char_fn_at(t.psi2, 1, scal[1].second);
        CHECK(trace_over_fiber(L, t, g) == direct);
        CHECK(trace_over_fiber(L, t, g) == trace_over_fiber(L, swap_torus_char(t), g));
    }
}

TEST_CASE("the fiber sum on the non-semisimple wall detects regularity") {
    const FqDesc* f2 = gf(2, 1);
    const LevelSystem* u2 = unit_tower(f2, 2);
    const FlagGeom* L1 = flag_geom(f2, 1);
    const FlagGeom* L2 = flag_geom(f2, 2);

    std::uint64_t wall1 = L1->group->from_entries({1, 1, 0, 1});
    std::uint64_t wall2 = embed_gl2(f2, 1, 2, wall1);
    REQUIRE(fiber_class(L1, wall1) == FiberClass{2, true});
    REQUIRE(fiber_class(L2, wall2) == FiberClass{2, true});

    for (const TorusChar& t : all_torus_chars(u2, 1)) {
        Cyc tr = trace_over_fiber(L1, t, wall1);
        if (t.regular) CHECK(tr.is_zero());
        else CHECK(!tr.is_zero());
    }
    for (const TorusChar& t : all_torus_chars(u2, 2)) {
        Cyc tr = trace_over_fiber(L2, t, wall2);
        if (t.regular) CHECK(tr.is_zero());
        else CHECK(!tr.is_zero());
    }

    // the nontrivial equal pair is non-regular and sees the wall
    std::vector<DualElt> cs = unit_chars(u2, 1);
    for (const DualElt& psi : cs) {
        TorusChar t = make_torus_char(u2, 1, psi, psi);
        Cyc tr = trace_over_fiber(L1, t, wall1);
        CHECK(!tr.is_zero());
        // q points, each contributing the determinant value
        CHECK(tr == char_fn_at(psi, 1, 1) * rat(2) * char_fn_at(psi, 1, 1));
    }

    const FqDesc* f3 = gf(3, 1);
    const LevelSystem* u3 = unit_tower(f3, 1);
    const FlagGeom* L3 = flag_geom(f3, 1);
    std::uint64_t wall3 = L3->group->from_entries({1, 1, 0, 1});
    REQUIRE(fiber_class(L3, wall3) == FiberClass{2, true});
    for (const TorusChar& t : all_torus_chars(u3, 1))
        CHECK(trace_over_fiber(L3, t, wall3).is_zero() == t.regular);
}

TEST_CASE("stratum tallies in closed form and by brute classification") {
    for (long Q : {2L, 3L, 4L}) {
        const FqDesc* f = Q == 4 ? gf(2, 2) : gf(Q == 2 ? 2 : 3, 1);
        SupportCounts want = closed_form(Q);
        SupportCounts got = support_counts(f, 1);
        CHECK(counts_equal(got, want));
        CHECK(got.total == Q * Q * Q * Q * (Q * Q - 1) * (Q * Q - Q));
        CHECK(got.g2 == Q * (Q - 1));
    }
    // the level-2 tower over F2 coincides with level 1 over F4
    SupportCounts lvl2 = support_counts(gf(2, 1), 2);
    CHECK(counts_equal(lvl2, closed_form(4)));

    for (long Q : {2L, 3L}) {
        const FqDesc* f = gf(Q, 1);
        const FlagGeom* L = flag_geom(f, 1);
        SupportCounts brute;
        for (std::uint64_t g : L->group->elements()) {
            FiberClass fc = fiber_class(L, g);
            if (fc.case_tag == 1) ++brute.split_rss;
            else if (fc.case_tag == 0) ++brute.nonsplit_rss;
            else if (fc.case_tag == 2) ++brute.case2;
            else if (fc.case_tag == 6) ++brute.non_tri;
            else if (fc.case_tag == 3 && fc.split) ++brute.g1_split;
            else if (fc.case_tag == 3) ++brute.g1_nonsplit;
            else if (fc.case_tag == 4) ++brute.case4;
            else ++brute.g2;
        }
        brute.total = L->group->order();
        CHECK(counts_equal(brute, closed_form(Q)));
    }
}

TEST_CASE("stratum growth follows fixed polynomials in q") {
    // interpolation sanity on a hand example
    std::vector<Rat> sq = fit_polynomial({{1, Int(1)}, {2, Int(4)}, {3, Int(9)}});
    CHECK(sq == std::vector<Rat>{rat(0), rat(0), rat(1)});

    std::vector<std::pair<long, Int>> pts1, pts2;
    for (auto [p, a] : std::vector<std::pair<long, int>>{{2, 1}, {3, 1}, {2, 2},
                                                         {5, 1}, {7, 1}, {2, 3}}) {
        const FqDesc* f = gf(p, a);
        SupportCounts sc = support_counts(f, 1);
        pts1.emplace_back(f->q, Int(sc.g1()));
        pts2.emplace_back(f->q, Int(sc.g2));
    }
    // q^5 - q^4 - q^2 + q, monic of degree 5 = dim - 3
    CHECK(fit_polynomial(pts1) ==
          std::vector<Rat>{rat(0), rat(1), rat(-1), rat(0), rat(-1), rat(1)});
    // q^2 - q, monic of degree 2 = dim - 6
    CHECK(fit_polynomial(pts2) == std::vector<Rat>{rat(0), rat(-1), rat(1)});
}

TEST_CASE("the verification suite passes and reports deterministically") {
    VerificationReport a = gl2a2_verify(gf(2, 1), {1, 2});
    CHECK(a.all_pass());
    CHECK(a.checks.size() == 33);

    VerificationReport b = gl2a2_verify(gf(2, 1), {1, 2});
    REQUIRE(a.checks.size() == b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) {
        CHECK(a.checks[i].name == b.checks[i].name);
        CHECK(a.checks[i].pass == b.checks[i].pass);
        CHECK(a.checks[i].witness == b.checks[i].witness);
    }

    VerificationReport c = gl2a2_verify(gf(3, 1), {1});
    CHECK(c.all_pass());
    CHECK(c.checks.size() == 16);

    nlohmann::json fib = fibers_to_json(gf(2, 1), 1);
    CHECK(fib["q"] == 2);
    CHECK(fib["group_order"] == 96);
    long total = 0;
    bool saw_outside = false;
    for (const auto& row : fib["classes"]) {
        total += row["size"].get<long>();
        if (row["case"] == "non-triangularizable") {
            saw_outside = true;
            CHECK(row["points"] == 0);
        }
    }
    CHECK(total == 96);
    CHECK(saw_outside);
}

TEST_CASE("error paths") {
    const FqDesc* f2 = gf(2, 1);
    const LevelSystem* u2 = unit_tower(f2, 2);
    const FqDesc* f3 = gf(3, 1);
    const LevelSystem* u3 = unit_tower(f3, 1);
    std::vector<DualElt> cs2 = unit_chars(u2, 1);
    std::vector<DualElt> cs3 = unit_chars(u3, 1);

    CHECK(kind_of([&] { unit_tower(f2, 0); }) == ErrorKind::InvalidLevel);
    CHECK(kind_of([&] { make_torus_char(u3, 1, cs2[0], cs2[1]); }) ==
          ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { is_regular(u2, 3, cs2[0], cs2[1]); }) == ErrorKind::InvalidLevel);
    CHECK(kind_of([&] {
              TorusChar t = make_torus_char(u2, 2, cs2[0], cs2[1]);
              raise_torus_char(t, 3);
          }) == ErrorKind::InvalidLevel);
    CHECK(kind_of([&] { flag_geom(gf(5, 1), 1); }) == ErrorKind::ResourceLimit);
    CHECK(kind_of([&] { flag_geom(f2, 0); }) == ErrorKind::InvalidLevel);

    const FlagGeom* L1 = flag_geom(f2, 1);
    const FlagGeom* L2 = flag_geom(f2, 2);
    CHECK(kind_of([&] { embed_gl2(f2, 2, 3, L2->group->id()); }) == ErrorKind::InvalidLevel);
    CHECK(kind_of([&] { embed_gl2(f2, 1, 2, 0); }) == ErrorKind::InvalidArgument);

    TorusChar t1 = make_torus_char(u2, 1, cs2[0], cs2[1]);
    CHECK(kind_of([&] { borel_linear(L2, t1); }) == ErrorKind::InvalidLevel);
    CHECK(kind_of([&] { chi_fixed_point(L1, t1, ~0ull); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { trace_over_fiber(L2, t1, L2->group->id()); }) ==
          ErrorKind::InvalidLevel);
    CHECK(kind_of([&] {
              TorusChar bad = make_torus_char(u3, 1, cs3[0], cs3[1]);
              borel_linear(L1, bad);
          }) == ErrorKind::InvalidArgument);

    CHECK(kind_of([&] { fit_polynomial({}); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { fit_polynomial({{1, Int(1)}, {1, Int(2)}}); }) ==
          ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { predicted_fiber_count({1, true}, 1, 1); }) ==
          ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { predicted_fiber_count({7, true}, 2, 1); }) == ErrorKind::Internal);
    CHECK(kind_of([&] { gl2a2_verify(f2, {}); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { gl2a2_verify(f2, {0, 1}); }) == ErrorKind::InvalidLevel);
}
