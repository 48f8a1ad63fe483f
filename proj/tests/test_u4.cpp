#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "charfn/error.hpp"
#include "charfn/u4.hpp"

using namespace charfn;

namespace {

bool same_values(const ClassFn& a, const ClassFn& b) {
    if (a.values.size() != b.values.size()) return false;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        if (a.values[i] != b.values[i]) return false;
    return true;
}

// textbook induction: Ind f(g) = (1/|H|) sum over x in G of f0(x g x^{-1})
ClassFn induce_brute(const ClassFn& f, const GroupPtr& big) {
    const GroupPtr& h = f.group;
    auto val = [&](std::uint64_t y) {
        return h->contains(y) ? f.at(y) : Cyc::zero(1);
    };
    return from_pointwise(big, [&](std::uint64_t g) {
        Cyc acc = Cyc::zero(1);
        for (std::uint64_t x : big->elements()) acc += val(big->conj(x, g));
        return acc * rat(Int(1), Int(h->order()));
    });
}

std::uint32_t field_sqrt(const FqDesc* f, std::uint32_t x) {
    return f->pow(x, static_cast<long>(f->q) / 2);
}

} // namespace

TEST_CASE("family sizes and the count identity") {
    for (int s : {1, 2}) {
        GroupPtr g = make_u4(gf(2, s));
        std::uint64_t q = gf(2, s)->q;
        std::vector<SheafFnSpec> sheaves = enumerate_fstable_sheaves(g);
        std::vector<IrrCharSpec> irrs = enumerate_irr_chars(g);
        CHECK(sheaves.size() == (q * q - 1) + 3 * (q - 1) * (q - 1) + q * q);
        CHECK(irrs.size() == q * q + 2 * (q - 1) + 4 * (q - 1) * (q - 1));
        CHECK(sheaves.size() == irrs.size());
    }
    CHECK(enumerate_fstable_sheaves(make_u4(gf(2, 1))).size() == 10);
    CHECK(enumerate_fstable_sheaves(make_u4(gf(2, 2))).size() == 58);
    // the polynomial identity behind the square matrix
    for (long q : {2L, 4L, 8L, 16L, 32L})
        CHECK((q * q - 1) + 3 * (q - 1) * (q - 1) + q * q ==
              q * q + 2 * (q - 1) + 4 * (q - 1) * (q - 1));
}

TEST_CASE("closed character formulas at q = 2") {
    GroupPtr g = make_u4(gf(2, 1));

    // x = y = 0 in the linear family is the trivial character
    CHECK(same_values(irr_char(g, {IrrType::I, 0, 0, 0, 0, 0, 0}), trivial_character(g)));

    // the degree-q character with x = 1: 2 at the identity, -2 at [0,1,c,0],
    // 0 outside the centre
    ClassFn chi = irr_char(g, {IrrType::II, 1, 0, 0, 0, 0, 0});
    CHECK(chi.degree() == Cyc(1, Rat(2)));
    for (std::uint64_t x : g->elements()) {
        std::vector<std::uint32_t> t = g->coords(x);
        if (t[0] != 0 || t[3] != 0)
            CHECK(chi.at(x).is_zero());
        else if (t[1] == 1)
            CHECK(chi.at(x) == Cyc(1, Rat(-2)));
        else
            CHECK(chi.at(x) == Cyc(1, Rat(2)));
    }

    // all four sign choices in family IV have degree q/2 = 1
    for (int e1 = 0; e1 < 2; ++e1)
        for (int e2 = 0; e2 < 2; ++e2) {
            ClassFn c4 = irr_char(g, {IrrType::IV, 0, 0, 1, 1, e1, e2});
            CHECK(c4.degree() == Cyc::one(1));
            CHECK(is_irreducible_character(c4));
        }

    // every member of the list is an irreducible character
    for (const IrrCharSpec& s : enumerate_irr_chars(g))
        CHECK(is_irreducible_character(irr_char(g, s)));
}

TEST_CASE("closed formulas match brute-force induction at q = 2") {
    GroupPtr g = make_u4(gf(2, 1));
    const FqDesc* f = g->ring.field;

    GroupPtr d0wall = subgroup_where(g, [&](std::uint64_t x) { return g->coords(x)[3] == 0; });
    ClassFn lin2 = from_pointwise(
        d0wall, [&](std::uint64_t x) { return add_char_eval(f, 1, d0wall->coords(x)[1]); });
    CHECK(same_values(induce_brute(lin2, g), irr_char(g, {IrrType::II, 1, 0, 0, 0, 0, 0})));

    GroupPtr a0wall = subgroup_where(g, [&](std::uint64_t x) { return g->coords(x)[0] == 0; });
    ClassFn lin3 = from_pointwise(
        a0wall, [&](std::uint64_t x) { return add_char_eval(f, 1, a0wall->coords(x)[2]); });
    CHECK(same_values(induce_brute(lin3, g), irr_char(g, {IrrType::III, 1, 0, 0, 0, 0, 0})));

    // family IV from the subgroup a in {0, 1}: w = 1, and the auxiliary
    // scalar fp must satisfy psi(fp) = eps2 sign
    GroupPtr h = subgroup_where(g, [&](std::uint64_t x) {
        std::uint32_t a = g->coords(x)[0];
        return a == 0 || a == 1;
    });
    CHECK(h->order() == g->order()); // at q = 2 the constraint is vacuous
    for (int e1 = 0; e1 < 2; ++e1)
        for (int e2 = 0; e2 < 2; ++e2) {
            std::uint32_t fp = e2 == 0 ? 0 : 1; // psi(0) = 1, psi(1) = -1
            ClassFn lin = from_pointwise(h, [&](std::uint64_t x) {
                std::vector<std::uint32_t> t = h->coords(x);
                std::uint32_t arg =
                    f->add(f->mul(fp, t[3]),
                           f->add(f->add(f->mul(t[1], t[0]), t[1]), t[2]));
                Cyc v = add_char_eval(f, 1, arg);
                return e1 && t[0] == 1 ? v * Rat(-1) : v;
            });
            ClassFn want = irr_char(g, {IrrType::IV, 0, 0, 1, 1, e1, e2});
            CHECK(same_values(induce_brute(lin, g), want));
            CHECK(same_values(irr_char_via_induction(g, {IrrType::IV, 0, 0, 1, 1, e1, e2}),
                              want));
        }
}

TEST_CASE("induced and closed forms agree across all of q = 4") {
    GroupPtr g = make_u4(gf(2, 2));
    for (const IrrCharSpec& s : enumerate_irr_chars(g)) {
        if (s.type == IrrType::I) continue;
        CHECK(same_values(irr_char(g, s), irr_char_via_induction(g, s)));
    }
}

TEST_CASE("rank-1 function values") {
    GroupPtr g = make_u4(gf(2, 1));

    // the constant family member with trivial parameters
    ClassFn one = sheaf_fn(g, {SheafType::v, 0, 0, 0, 0, 0});
    for (const Cyc& v : one.values) CHECK(v == Cyc::one(1));

    // centre-supported with parameter (1,0): (-1)^b on [0,b,c,0]
    ClassFn si = sheaf_fn(g, {SheafType::i, 1, 0, 0, 0, 0});
    for (std::uint64_t x : g->elements()) {
        std::vector<std::uint32_t> t = g->coords(x);
        if (t[0] != 0 || t[3] != 0)
            CHECK(si.at(x).is_zero());
        else
            CHECK(si.at(x) == Cyc(1, Rat(t[1] == 1 ? -1 : 1)));
    }

    // family iii with d0 = alpha = 1: (-1)^{b+c} on [0,b,c,1]
    ClassFn siii = sheaf_fn(g, {SheafType::iii, 0, 0, 0, 1, 1});
    for (std::uint64_t x : g->elements()) {
        std::vector<std::uint32_t> t = g->coords(x);
        if (t[0] != 0 || t[3] != 1)
            CHECK(siii.at(x).is_zero());
        else
            CHECK(siii.at(x) == Cyc(1, Rat((t[1] + t[2]) % 2 == 1 ? -1 : 1)));
    }

    // every family member is conjugation-invariant
    for (int s : {1, 2}) {
        GroupPtr gg = make_u4(gf(2, s));
        for (const SheafFnSpec& sp : enumerate_fstable_sheaves(gg)) {
            ClassFn fn = sheaf_fn(gg, sp); // construction itself checks constancy
            for (std::uint64_t x : gg->generators())
                for (std::uint64_t y : gg->elements())
                    CHECK(fn.at(gg->conj(x, y)) == fn.at(y));
        }
    }
}

TEST_CASE("transition matrix at q = 2") {
    GroupPtr g = make_u4(gf(2, 1));
    TransitionResult tr = transition(g);
    CHECK(tr.report.all_pass());
    CHECK(tr.matrix.size() == 10);

    std::size_t fours = 0;
    for (const MatrixBlock& b : tr.blocks) {
        if (b.rows.size() == 1) {
            // discovered singleton pairings: v <-> I, axis members of i <-> II, III
            const SheafFnSpec& row = tr.sheaf_specs[b.rows[0]];
            const IrrCharSpec& col = tr.irr_specs[b.cols[0]];
            CHECK(b.entries == std::vector<std::string>{"1/1"});
            if (row.type == SheafType::v) {
                CHECK(col.type == IrrType::I);
                CHECK(col.x == row.s);
                CHECK(col.y == row.t);
            } else {
                REQUIRE(row.type == SheafType::i);
                if (row.s != 0 && row.t == 0) {
                    CHECK(col.type == IrrType::II);
                    CHECK(col.x == row.s);
                } else {
                    REQUIRE((row.s == 0 && row.t != 0));
                    CHECK(col.type == IrrType::III);
                    CHECK(col.x == row.t);
                }
            }
        } else {
            ++fours;
            REQUIRE(b.rows.size() == 4);
            // rows: the non-axis centre member plus families ii, iii, iv
            std::multiset<SheafType> types;
            for (std::size_t i : b.rows) types.insert(tr.sheaf_specs[i].type);
            CHECK(types == std::multiset<SheafType>{SheafType::i, SheafType::ii, SheafType::iii,
                                                    SheafType::iv});
            for (std::size_t j : b.cols) CHECK(tr.irr_specs[j].type == IrrType::IV);
            for (std::size_t i : b.rows)
                for (std::size_t j : b.cols) {
                    Cyc v = tr.matrix[i][j];
                    CHECK((v == Cyc(1, rat(Int(1), Int(2))) || v == Cyc(1, rat(Int(-1), Int(2)))));
                }
        }
    }
    CHECK(fours == 1);
}

TEST_CASE("transition matrix at q = 4") {
    GroupPtr g = make_u4(gf(2, 2));
    TransitionResult tr = transition(g);
    CHECK(tr.report.all_pass());
    CHECK(tr.matrix.size() == 58);

    std::set<std::pair<std::uint32_t, std::uint32_t>> four_block_params;
    std::size_t singles = 0;
    for (const MatrixBlock& b : tr.blocks) {
        if (b.rows.size() == 1) {
            ++singles;
            continue;
        }
        REQUIRE(b.rows.size() == 4);
        // each four-block involves the IV quadruple of one parameter pair
        std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
        std::set<std::pair<int, int>> signs;
        for (std::size_t j : b.cols) {
            const IrrCharSpec& s = tr.irr_specs[j];
            REQUIRE(s.type == IrrType::IV);
            pairs.insert({s.a0, s.d0});
            signs.insert({s.eps1, s.eps2});
        }
        CHECK(pairs.size() == 1);
        CHECK(signs.size() == 4);
        four_block_params.insert(*pairs.begin());
    }
    CHECK(singles == 22);                  // q^2 + 2(q-1)
    CHECK(four_block_params.size() == 9);  // one block per (a0, d0) pair
}

TEST_CASE("the coordinate symmetry") {
    GroupPtr g2 = make_u4(gf(2, 1));
    CHECK(xi_apply(g2, g2->id()) == g2->id());
    // on the 2-element field, squaring is the identity, so the map is an
    // involution there
    for (std::uint64_t x : g2->elements()) CHECK(xi_apply(g2, xi_apply(g2, x)) == x);

    VerificationReport rep2 = xi_action(g2);
    CHECK(rep2.all_pass());

    GroupPtr g4 = make_u4(gf(2, 2));
    const FqDesc* f = g4->ring.field;
    bool moved = false;
    for (std::uint64_t x : g4->elements()) {
        std::vector<std::uint32_t> t = g4->coords(x);
        for (std::uint32_t& v : t) v = f->mul(v, v);
        CHECK(xi_apply(g4, xi_apply(g4, x)) == g4->from_coords(t));
        if (g4->from_coords(t) != x) moved = true;
    }
    CHECK(moved); // squaring is not the identity on the 4-element field

    // pullback sends family iii with (d0, alpha) to family ii with
    // parameters (sqrt(d0), alpha), and family ii with (a0, t) to family
    // iii with (a0, sqrt(t))
    for (std::uint32_t d0 = 1; d0 < 4; ++d0)
        for (std::uint32_t al = 1; al < 4; ++al) {
            ClassFn src = sheaf_fn(g4, {SheafType::iii, 0, 0, 0, d0, al});
            ClassFn pulled = from_pointwise(
                g4, [&](std::uint64_t x) { return src.at(xi_apply(g4, x)); });
            ClassFn want = sheaf_fn(g4, {SheafType::ii, 0, al, field_sqrt(f, d0), 0, 0});
            CHECK(same_values(pulled, want));
        }
    for (std::uint32_t a0 = 1; a0 < 4; ++a0)
        for (std::uint32_t t = 1; t < 4; ++t) {
            ClassFn src = sheaf_fn(g4, {SheafType::ii, 0, t, a0, 0, 0});
            ClassFn pulled = from_pointwise(
                g4, [&](std::uint64_t x) { return src.at(xi_apply(g4, x)); });
            ClassFn want = sheaf_fn(g4, {SheafType::iii, 0, 0, 0, a0, field_sqrt(f, t)});
            CHECK(same_values(pulled, want));
        }
}

TEST_CASE("support census note") {
    VerificationReport rep = infinitude_note({2, 4});
    CHECK(rep.all_pass());
    CHECK(rep.checks.size() == 2);
    CHECK_THROWS_AS(infinitude_note({3}), Error);
}

TEST_CASE("error paths") {
    GroupPtr g = make_u4(gf(2, 1));
    CHECK_THROWS_AS(irr_char(g, {IrrType::II, 0, 0, 0, 0, 0, 0}), Error);
    CHECK_THROWS_AS(irr_char(g, {IrrType::IV, 0, 0, 0, 1, 0, 0}), Error);
    CHECK_THROWS_AS(irr_char(g, {IrrType::IV, 0, 0, 1, 1, 2, 0}), Error);
    CHECK_THROWS_AS(irr_char_via_induction(g, {IrrType::I, 0, 0, 0, 0, 0, 0}), Error);
    CHECK_THROWS_AS(sheaf_fn(g, {SheafType::i, 0, 0, 0, 0, 0}), Error);
    CHECK_THROWS_AS(sheaf_fn(g, {SheafType::iv, 0, 0, 0, 1, 0}), Error);
    CHECK_THROWS_AS(xi_apply(g, ~0ull), Error);

    GroupPtr h = make_heisenberg(gf(3, 1));
    CHECK_THROWS_AS(irr_char(h, {IrrType::I, 0, 0, 0, 0, 0, 0}), Error);
    CHECK_THROWS_AS(transition(h), Error);

    try {
        make_u4(gf(3, 1));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedCharacteristic);
    }
}
