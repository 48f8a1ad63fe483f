#pragma once

#include <optional>
#include <string>

#include <gmpxx.h>

namespace charfn {

// Exact rational arithmetic.  Backed by GMP's mpq_class, which keeps
// values in lowest terms with a positive denominator — exactly the
// canonical form the rest of the library relies on.  No floating point
// appears anywhere in a logic path.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long n) { return Rat(n); }

// n/d in canonical form; d must be nonzero.
Rat rat(long n, long d);
Rat rat(const Int& n, const Int& d);

// Exact square root of a nonnegative rational, if it is a perfect
// square of a rational; nullopt otherwise.
std::optional<Rat> rat_sqrt(const Rat& x);

bool rat_is_integer(const Rat& x);

// Canonical "num/den" rendering, denominator always printed.
std::string rat_to_string(const Rat& x);

// Parses "num/den" or "num".
Rat rat_from_string(const std::string& s);

} // namespace charfn
