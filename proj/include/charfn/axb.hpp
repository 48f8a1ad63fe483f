#pragma once

// Characters of the affine group of the line over a finite field: the
// q - 1 linear characters factor through the multiplicative part, and
// the single degree-(q-1) irreducible is reproduced both by induction
// from the translation subgroup and as a difference of two indicator
// functions, one spread over the translations and one concentrated at
// the identity.

#include <vector>

#include "charfn/classfn.hpp"
#include "charfn/dualgrp.hpp"
#include "charfn/fingroup.hpp"
#include "charfn/gf.hpp"
#include "charfn/report.hpp"

namespace charfn {

// a character label: q - 1 linear ones indexed by the exponent of a
// multiplicative character, plus the unique big one
struct AxbChar {
    bool big = false;
    long j = 0; // multiplicative character index; ignored when big

    bool operator==(const AxbChar& o) const { return big == o.big && (big || j == o.j); }
};

// all q irreducible characters, linear ones first (j ascending, j = 0
// the trivial character), the big one last
std::vector<AxbChar> axb_chars(const GroupPtr& g);

ClassFn axb_char(const GroupPtr& g, const AxbChar& spec);

// the big character computed by inducing a nontrivial additive
// character of the translation subgroup {[1, b]}
ClassFn axb_big_via_induction(const GroupPtr& g);

// Pointwise identity: big = q * (indicator of the identity) minus the
// indicator of the translation subgroup, with both supports checked to
// be conjugation-stable and neither term alone proportional to the big
// character.
VerificationReport ic_difference_check(const FqDesc* f);

// full table checks (values, orthonormality, completeness, induction
// route) followed by the difference identity
VerificationReport axb_verify(const FqDesc* f);

} // namespace charfn
