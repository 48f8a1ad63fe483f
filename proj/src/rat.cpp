#include "charfn/rat.hpp"

#include "charfn/error.hpp"

namespace charfn {

Rat rat(long n, long d) {
    require(d != 0, ErrorKind::DivisionByZero, "rational with zero denominator");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

Rat rat(const Int& n, const Int& d) {
    require(d != 0, ErrorKind::DivisionByZero, "rational with zero denominator");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

std::optional<Rat> rat_sqrt(const Rat& x) {
    if (sgn(x) < 0) return std::nullopt;
    Int num = x.get_num(), den = x.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    return rat(Int(sqrt(num)), Int(sqrt(den)));
}

bool rat_is_integer(const Rat& x) { return x.get_den() == 1; }

std::string rat_to_string(const Rat& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rat rat_from_string(const std::string& s) {
    Rat r;
    int rc = mpq_set_str(r.get_mpq_t(), s.c_str(), 10);
    require(rc == 0, ErrorKind::InvalidArgument, "malformed rational '" + s + "'");
    require(r.get_den() != 0, ErrorKind::DivisionByZero, "rational with zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

} // namespace charfn
