#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "charfn/classfn.hpp"
#include "charfn/fingroup.hpp"
#include "charfn/report.hpp"

namespace charfn {

// Element of the strictly-upper-triangular 3x3 algebra, as coordinates
// against the basis (E12, E23, E13).
struct LieElt {
    std::array<std::uint32_t, 3> c{0, 0, 0};
    bool operator==(const LieElt& o) const { return c == o.c; }
    bool operator!=(const LieElt& o) const { return !(*this == o); }
};

// Linear functional on the algebra, as coefficients against the dual
// basis: <f, x> = coords[0]*x12 + coords[1]*x23 + coords[2]*x13.
struct LieFunctional {
    std::array<std::uint32_t, 3> coords{0, 0, 0};
    bool operator==(const LieFunctional& o) const { return coords == o.coords; }
    bool operator!=(const LieFunctional& o) const { return !(*this == o); }
    bool operator<(const LieFunctional& o) const { return coords < o.coords; }
};

// One orbit of the coadjoint action: closed under it by construction.
struct CoadOrbit {
    std::vector<LieFunctional> points; // sorted, duplicate-free
    LieFunctional base;
};

// The algebra of an [a,b,c] group.  Every g satisfies (g-1)^3 = 0, so the
// log/exp series truncate and are mutually inverse (2 must be a unit).
struct NilLie {
    GroupPtr group;
    int dimension = 3;
};

NilLie nil_lie(const GroupPtr& g);

LieElt lie_log(const NilLie& L, std::uint64_t g);
std::uint64_t lie_exp(const NilLie& L, const LieElt& x);

// the base-field pairing <f, x>
std::uint32_t lie_pair(const NilLie& L, const LieFunctional& f, const LieElt& x);

// f composed with Ad(g^{-1}); Ad is evaluated through conjugation and log
LieFunctional coad_act(const NilLie& L, std::uint64_t g, const LieFunctional& f);

CoadOrbit orbit_of(const NilLie& L, const LieFunctional& f);
// the full partition of the q^3 functionals, ordered by minimal point
std::vector<CoadOrbit> coad_orbits(const NilLie& L);

// chi_O(g) = |O|^{-1/2} sum_{f in O} psi(<f, log g>)
ClassFn orbit_char(const NilLie& L, const CoadOrbit& o);

// checks that the orbit characters are orthonormal, as numerous as the
// conjugacy classes, and that their squared degrees fill the group order
VerificationReport verify_kirillov_bijection(const NilLie& L);

nlohmann::json orbits_to_json(const NilLie& L, const std::vector<CoadOrbit>& orbits);

} // namespace charfn
