#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "charfn/classfn.hpp"
#include "charfn/fingroup.hpp"
#include "charfn/report.hpp"

namespace charfn {

// Rank-1 functions attached to the five families of supports in the
// [a,b,c,d] group.  Parameter fields by type:
//   i:   (s, t) != (0, 0)      value psi0(s b + t c) on the centre
//   ii:  a0 != 0, t != 0       value psi0(t c) on [a0, b, c, 0]
//   iii: d0 != 0, alpha != 0   value psi0(alpha b + alpha^2 d0 c) on [0, b, c, d0]
//   iv:  a0 != 0, d0 != 0      value psi0(a0^{-2} d0^{-1} c) on [a0, b, c, d0]
//   v:   (s, t) free           value psi0(s a + t d) everywhere
enum class SheafType { i, ii, iii, iv, v };

struct SheafFnSpec {
    SheafType type = SheafType::v;
    std::uint32_t s = 0, t = 0;     // types i, v
    std::uint32_t a0 = 0, d0 = 0;   // types ii, iii, iv
    std::uint32_t alpha = 0;        // type iii
    bool operator==(const SheafFnSpec& o) const = default;
};

// The four irreducible families.  Parameter fields by type:
//   I:   x, y free             [a,b,c,d] -> psi0(x a + y d)
//   II:  x != 0                q psi0(x b) on the centre, 0 elsewhere
//   III: x != 0                q psi0(x c) on the centre, 0 elsewhere
//   IV:  a0, d0 != 0; eps1, eps2 in {0,1} are the sign characters of the
//        2-element groups {0,a0} and {0,d0} (bit set = nontrivial)
enum class IrrType { I, II, III, IV };

struct IrrCharSpec {
    IrrType type = IrrType::I;
    std::uint32_t x = 0, y = 0;
    std::uint32_t a0 = 0, d0 = 0;
    int eps1 = 0, eps2 = 0;
    bool operator==(const IrrCharSpec& o) const = default;
};

std::string sheaf_spec_str(const SheafFnSpec& s);
std::string irr_spec_str(const IrrCharSpec& s);

// closed-formula character; the group must be an [a,b,c,d] group
ClassFn irr_char(const GroupPtr& g, const IrrCharSpec& spec);

// same character built by induction from the stated subgroup (types II,
// III, IV).  For type IV every admissible auxiliary scalar f is tried and
// the results are required to agree.
ClassFn irr_char_via_induction(const GroupPtr& g, const IrrCharSpec& spec);

// raw trace function: local-system value on the support, 0 elsewhere
ClassFn sheaf_fn(const GroupPtr& g, const SheafFnSpec& spec);

// deterministic parameter order; sizes q^2-1, (q-1)^2, (q-1)^2, (q-1)^2, q^2
std::vector<SheafFnSpec> enumerate_fstable_sheaves(const GroupPtr& g);
// deterministic parameter order; sizes q^2, q-1, q-1, 4(q-1)^2
std::vector<IrrCharSpec> enumerate_irr_chars(const GroupPtr& g);

// the coordinate map [a,b,c,d] -> [d, c+ab+a^2 d, b^2+dc+abd, a^2]
std::uint64_t xi_apply(const GroupPtr& g, std::uint64_t x);

struct TransitionResult {
    std::vector<SheafFnSpec> sheaf_specs;
    std::vector<IrrCharSpec> irr_specs;
    std::vector<ClassFn> sheaves; // normalized, row order = sheaf_specs
    std::vector<ClassFn> irreducibles;
    CycMatrix matrix; // rows = sheaves, columns = irreducibles
    std::vector<MatrixBlock> blocks;
    VerificationReport report;
};

// builds the normalized sheaf functions, decomposes them against the
// irreducible basis, and checks the block theorem: 1x1 blocks with entry
// 1 and (q-1)^2 orthogonal 4x4 blocks with entries +-1/2
TransitionResult transition(const GroupPtr& g);

// xi is a homomorphism, xi^2 is coordinatewise squaring, and pullback by
// xi permutes the sheaf functions, swapping families ii and iii
VerificationReport xi_action(const GroupPtr& g);

// support census: the number of distinct supports grows with q
VerificationReport infinitude_note(const std::vector<std::uint32_t>& qs);

// all checks of this module bundled for the CLI
VerificationReport u4_verify(const GroupPtr& g);

} // namespace charfn
