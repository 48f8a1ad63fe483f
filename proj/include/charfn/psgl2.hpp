#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "charfn/classfn.hpp"
#include "charfn/dualgrp.hpp"
#include "charfn/fingroup.hpp"
#include "charfn/rat.hpp"
#include "charfn/report.hpp"

namespace charfn {

// Principal-series data for the 2x2 matrix groups over the truncated
// rings F_{q^m}[eps]/(eps^2): torus characters, the induced characters,
// fixed-point sums over flags, and the stratification of the group by
// the shape of the stable-flag fiber.

// The character tower of the unit groups A'^{F^m}; levels are the
// divisors of `bound` that fit the size limits.
const LevelSystem* unit_tower(const FqDesc* ground, int bound);

// A character of the diagonal torus T = A' x A' at level m: a pair of
// canonical unit-group characters whose own levels divide m.  `regular`
// caches nontriviality of psi1 / psi2 on the congruence subgroup
// {1 + eps c}; induced characters are irreducible exactly on that locus.
struct TorusChar {
    const LevelSystem* units = nullptr;
    int level = 1;
    DualElt psi1, psi2;
    bool regular = false;

    bool operator==(const TorusChar& o) const {
        return units == o.units && level == o.level && psi1 == o.psi1 && psi2 == o.psi2;
    }
    bool operator!=(const TorusChar& o) const { return !(*this == o); }
};

bool is_regular(const LevelSystem* units, int m, const DualElt& psi1, const DualElt& psi2);
TorusChar make_torus_char(const LevelSystem* units, int m, DualElt psi1, DualElt psi2);

// All characters of the level-m unit group: canonical forms over the
// divisor levels of m, in (level, exponent) order.
std::vector<DualElt> unit_chars(const LevelSystem* units, int m);

// All pairs at level m, psi1-major; regular_chars keeps the regular ones.
std::vector<TorusChar> all_torus_chars(const LevelSystem* units, int m);
std::vector<TorusChar> regular_chars(const LevelSystem* units, int m);

TorusChar swap_torus_char(const TorusChar& t);         // (psi2, psi1)
TorusChar raise_torus_char(const TorusChar& t, int m); // reread at a multiple level

std::string torus_char_str(const TorusChar& t);

// Level-m flag geometry: the group G = GL_2 of the truncated ring, its
// triangular and diagonal subgroups, left coset representatives of the
// triangular subgroup, and the free rank-1 submodules of A^2 listed as
// canonical primitive vectors (1, s) and (eps t, 1).  Interned per
// (ground, m); a level whose group exceeds the order bound raises a
// resource-limit error.
struct FlagGeom {
    const FqDesc* ground = nullptr;
    int m = 1;
    const ARDesc* ring = nullptr;
    GroupPtr group, borel, torus;
    std::vector<std::uint64_t> cosets;
    std::vector<std::array<std::uint32_t, 2>> lines;
};
const FlagGeom* flag_geom(const FqDesc* ground, int m);

// entrywise tower embedding into the group at a multiple level
std::uint64_t embed_gl2(const FqDesc* ground, int from, int to, std::uint64_t g);

// the linear character (psi1 x psi2) o pi on the triangular subgroup,
// where pi reads off the diagonal
ClassFn borel_linear(const FlagGeom* L, const TorusChar& t);

// induction of borel_linear to the full group; degree q^m(q^m + 1)
ClassFn induced_c(const FlagGeom* L, const TorusChar& t);

// Sum over the flags xB fixed by g (those with x^{-1} g x triangular) of
// (psi1 x psi2) at the diagonal of x^{-1} g x; agrees with induced_c.
Cyc chi_fixed_point(const FlagGeom* L, const TorusChar& t, std::uint64_t g);
ClassFn chi_fn(const FlagGeom* L, const TorusChar& t);

// the g-stable lines A v with the eigenvalue pair (alpha1, alpha2):
// g v = alpha1 v and alpha2 = det(g) / alpha1 is the scalar on A^2 / A v
std::vector<std::pair<std::uint32_t, std::uint32_t>> stable_line_scalars(const FlagGeom* L,
                                                                         std::uint64_t g);
// sum of psi1(alpha1) psi2(alpha2) over the stable lines
Cyc trace_over_fiber(const FlagGeom* L, const TorusChar& t, std::uint64_t g);
long fiber_point_count(const FlagGeom* L, std::uint64_t g);

// Intrinsic classification of the stable-flag fiber of g:
//   1  reduction mod eps regular semisimple with rational eigenvalues;
//      two fiber points at every level
//   0  reduction regular semisimple with irreducible characteristic
//      polynomial; the fiber is empty here and has two points at even
//      relative levels (split = false)
//   2  reduction regular but not semisimple, and the double eigenvalue
//      lifts to a root of the characteristic polynomial over the ring
//      (g is triangularizable); q^m fiber points, and the fiber sum
//      vanishes for every regular torus character
//   6  reduction regular but not semisimple, and the eigenvalue does
//      not lift (no stable line even after scalar extension); the
//      fiber is empty at every level (split = false)
//   3  scalar reduction, eps-part semisimple non-scalar; 2 q^m points
//      when the eps-part eigenvalues are rational (split), else empty
//      until the level gets even
//   4  scalar reduction, eps-part not semisimple; q^m points
//   5  a unit scalar times 1 + eps scalar; q^m (q^m + 1) points
struct FiberClass {
    int case_tag = 0;
    bool split = true;

    bool operator==(const FiberClass& o) const {
        return case_tag == o.case_tag && split == o.split;
    }
};
FiberClass fiber_class(const FlagGeom* L, std::uint64_t g);

// the count the classification predicts over the degree-d extension of
// the classification level (whose field has Q elements)
long predicted_fiber_count(const FiberClass& c, long Q, int d);

struct FiberReport {
    FiberClass cls;
    std::map<int, long> point_counts; // level -> enumerated fiber size
};
// classify g at its own level and enumerate its fiber at each multiple
// of g_level appearing in `levels`
FiberReport classify_fiber(const FqDesc* ground, int g_level, std::uint64_t g,
                           const std::vector<int>& levels);

// Element tallies of the level-m group by fiber class, computed from
// reduction types alone (the group is not materialized; within a fixed
// non-semisimple reduction, exactly Q^3 of the Q^4 eps-parts are
// triangularizable).  g0 collects the classes with small or cancelling
// fibers (tags 1, 2, and the nonsplit variant of 1), g1 the tag-3/4
// stratum, g2 the central tag-5 stratum; g0 + non_tri + g1 + g2 is the
// whole group.
struct SupportCounts {
    long split_rss = 0;    // tag 1
    long nonsplit_rss = 0; // tag 0
    long case2 = 0;        // tag 2
    long non_tri = 0;      // tag 6, outside the image of the covering
    long g1_split = 0;     // tag 3, rational eigenvalues
    long g1_nonsplit = 0;  // tag 3, irreducible characteristic polynomial
    long case4 = 0;        // tag 4
    long g2 = 0;           // tag 5
    long total = 0;

    long g0() const { return split_rss + nonsplit_rss + case2; }
    long g1() const { return g1_split + g1_nonsplit + case4; }
};
SupportCounts support_counts(const FqDesc* ground, int m);

// exact interpolation through the (x, value) samples; coefficients
// ascending, trailing zeros trimmed
std::vector<Rat> fit_polynomial(const std::vector<std::pair<long, Int>>& points);

// the full verification suite over the given levels
VerificationReport gl2a2_verify(const FqDesc* ground, std::vector<int> levels);

// per-class fiber tags and counts at level m
nlohmann::json fibers_to_json(const FqDesc* ground, int m);

} // namespace charfn
