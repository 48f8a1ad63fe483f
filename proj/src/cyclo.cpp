#include "charfn/cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "charfn/config.hpp"
#include "charfn/error.hpp"

namespace charfn {

namespace {

// Integer polynomials, ascending degree, no trailing zeros.
using ZPoly = std::vector<Int>;

ZPoly zpoly_trim(ZPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

// Exact division, used only where divisibility is guaranteed.
ZPoly zpoly_divexact(const ZPoly& num, const ZPoly& den) {
    ZPoly rem = num;
    ZPoly quot(num.size(), Int(0));
    const long dn = static_cast<long>(den.size()) - 1;
    require(dn >= 0 && den.back() != 0, ErrorKind::Internal, "division by zero polynomial");
    while (static_cast<long>(rem.size()) - 1 >= dn) {
        long k = static_cast<long>(rem.size()) - 1 - dn;
        Int c = rem.back() / den.back();
        quot[k] = c;
        for (long i = 0; i <= dn; ++i) rem[k + i] -= c * den[i];
        rem = zpoly_trim(std::move(rem));
        if (rem.empty()) break;
    }
    require(rem.empty(), ErrorKind::Internal, "inexact polynomial division");
    return zpoly_trim(std::move(quot));
}

std::vector<long> divisors_of(long n) {
    std::vector<long> ds;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            ds.push_back(d);
            if (d != n / d) ds.push_back(n / d);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

// Per-order context: phi, Phi_N, and lazily grown reduction rows for
// x^e mod Phi_N, phi(N) <= e < N.
class CycContext {
public:
    static const CycContext& get(long order);

    long order;
    long phi;
    ZPoly min_poly; // Phi_N, monic, degree phi

    // Row for exponent e (phi <= e < order): dense coefficients of
    // x^e mod Phi_N, length phi.
    const std::vector<Int>& row(long e) const;

private:
    explicit CycContext(long n);
    mutable std::vector<std::vector<Int>> rows_;
    mutable long rows_built_ = 0;
    mutable std::mutex mu_;
};

// Cache of cyclotomic polynomial coefficients.  Filled iteratively over
// ascending divisors so no computation ever re-enters the lock.
const ZPoly& cyclotomic_poly_cached(long n) {
    static std::map<long, ZPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto hit = cache.find(n);
    if (hit != cache.end()) return hit->second;
    for (long d : divisors_of(n)) {
        if (cache.count(d)) continue;
        // x^d - 1 divided by the cyclotomic polynomials of the proper
        // divisors of d, all of which are already cached (every proper
        // divisor of d divides n and precedes d in ascending order).
        ZPoly num(d + 1, Int(0));
        num[0] = -1;
        num[d] = 1;
        for (long e : divisors_of(d)) {
            if (e == d) continue;
            num = zpoly_divexact(num, cache.at(e));
        }
        cache.emplace(d, std::move(num));
    }
    return cache.at(n);
}

std::map<long, std::unique_ptr<CycContext>>& context_registry() {
    static std::map<long, std::unique_ptr<CycContext>> reg;
    return reg;
}

std::mutex& registry_mutex() {
    static std::mutex mu;
    return mu;
}

const CycContext& CycContext::get(long order) {
    require(order >= 1, ErrorKind::InvalidOrder, "cyclotomic order must be >= 1");
    require(static_cast<std::uint64_t>(order) <= Config::global().max_cyclotomic_order,
            ErrorKind::ResourceLimit,
            "cyclotomic order " + std::to_string(order) + " exceeds the configured bound");
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto& reg = context_registry();
    auto it = reg.find(order);
    if (it == reg.end()) it = reg.emplace(order, std::unique_ptr<CycContext>(new CycContext(order))).first;
    return *it->second;
}

CycContext::CycContext(long n) : order(n) {
    min_poly = cyclotomic_poly_cached(n);
    phi = static_cast<long>(min_poly.size()) - 1;
    rows_.resize(static_cast<std::size_t>(order - phi));
}

const std::vector<Int>& CycContext::row(long e) const {
    std::lock_guard<std::mutex> lock(mu_);
    // Rows are built incrementally: row(phi) from Phi_N itself, then each
    // next row by multiplying by x and folding the top coefficient back.
    while (rows_built_ <= e - phi) {
        long cur = phi + rows_built_;
        std::vector<Int> r(phi, Int(0));
        if (cur == phi) {
            for (long i = 0; i < phi; ++i) r[i] = -min_poly[i];
        } else {
            const std::vector<Int>& prev = rows_[rows_built_ - 1];
            Int top = prev[phi - 1];
            for (long i = phi - 1; i >= 1; --i) r[i] = prev[i - 1];
            r[0] = 0;
            if (top != 0)
                for (long i = 0; i < phi; ++i) r[i] -= top * min_poly[i];
        }
        rows_[rows_built_++] = std::move(r);
    }
    return rows_[e - phi];
}

long lcm_order(long a, long b) {
    long g = std::gcd(a, b);
    Int l = Int(a) / g * Int(b);
    require(l.fits_slong_p() &&
                static_cast<std::uint64_t>(l.get_si()) <= Config::global().max_cyclotomic_order,
            ErrorKind::ResourceLimit, "lcm of cyclotomic orders exceeds the configured bound");
    return l.get_si();
}

} // namespace

long euler_phi(long n) { return static_cast<long>(cyclotomic_polynomial(n).size()) - 1; }

const std::vector<Int>& cyclotomic_polynomial(long n) {
    require(n >= 1, ErrorKind::InvalidOrder, "cyclotomic order must be >= 1");
    require(static_cast<std::uint64_t>(n) <= Config::global().max_cyclotomic_order,
            ErrorKind::ResourceLimit,
            "cyclotomic order " + std::to_string(n) + " exceeds the configured bound");
    return cyclotomic_poly_cached(n);
}

Cyc::Cyc(long order) : order_(order) {
    CycContext::get(order); // validates the order
}

Cyc::Cyc(long order, const Rat& value) : order_(order) {
    CycContext::get(order);
    if (value != 0) terms_.push_back({0, value});
}

void Cyc::normalize(std::vector<Rat>&& dense) {
    terms_.clear();
    for (long e = 0; e < static_cast<long>(dense.size()); ++e)
        if (dense[e] != 0) terms_.push_back({e, std::move(dense[e])});
}

Cyc Cyc::root(long order, long k) {
    const CycContext& ctx = CycContext::get(order);
    k %= order;
    if (k < 0) k += order;
    Cyc out(order);
    if (k < ctx.phi) {
        out.terms_.push_back({k, Rat(1)});
        return out;
    }
    const std::vector<Int>& r = ctx.row(k);
    for (long e = 0; e < ctx.phi; ++e)
        if (r[e] != 0) out.terms_.push_back({e, Rat(r[e])});
    return out;
}

bool Cyc::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0);
}

Rat Cyc::rational_value() const {
    require(is_rational(), ErrorKind::InvalidArgument,
            "cyclotomic value is not rational: " + to_string());
    return terms_.empty() ? Rat(0) : terms_[0].second;
}

Cyc Cyc::operator-() const {
    Cyc out(order_);
    out.terms_ = terms_;
    for (auto& t : out.terms_) t.second = -t.second;
    return out;
}

Cyc Cyc::operator+(const Cyc& o) const {
    if (order_ != o.order_) {
        long l = lcm_order(order_, o.order_);
        return lift_to_order(l) + o.lift_to_order(l);
    }
    Cyc out(order_);
    // Merge of two sorted term lists.
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
            out.terms_.push_back(terms_[i++]);
        } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
            out.terms_.push_back(o.terms_[j++]);
        } else {
            Rat s = terms_[i].second + o.terms_[j].second;
            if (s != 0) out.terms_.push_back({terms_[i].first, std::move(s)});
            ++i, ++j;
        }
    }
    return out;
}

Cyc Cyc::operator-(const Cyc& o) const { return *this + (-o); }

Cyc Cyc::operator*(const Cyc& o) const {
    if (order_ != o.order_) {
        long l = lcm_order(order_, o.order_);
        return lift_to_order(l) * o.lift_to_order(l);
    }
    const CycContext& ctx = CycContext::get(order_);
    std::vector<Rat> dense(static_cast<std::size_t>(ctx.phi), Rat(0));
    for (const Term& a : terms_) {
        for (const Term& b : o.terms_) {
            long e = (a.first + b.first) % order_;
            Rat c = a.second * b.second;
            if (e < ctx.phi) {
                dense[e] += c;
            } else {
                const std::vector<Int>& r = ctx.row(e);
                for (long k = 0; k < ctx.phi; ++k)
                    if (r[k] != 0) dense[k] += c * Rat(r[k]);
            }
        }
    }
    Cyc out(order_);
    out.normalize(std::move(dense));
    return out;
}

Cyc Cyc::operator*(const Rat& r) const {
    Cyc out(order_);
    if (r == 0) return out;
    out.terms_ = terms_;
    for (auto& t : out.terms_) t.second *= r;
    return out;
}

Cyc Cyc::operator/(const Rat& r) const {
    require(r != 0, ErrorKind::DivisionByZero, "division of cyclotomic value by zero");
    Rat inv = Rat(1) / r;
    return *this * inv;
}

Cyc Cyc::conj() const { return galois(order_ - 1 >= 1 ? order_ - 1 : 1); }

Cyc Cyc::galois(long j) const {
    j %= order_;
    if (j < 0) j += order_;
    if (order_ == 1) j = 1; // the identity on Q
    require(std::gcd(j, order_) == 1, ErrorKind::InvalidArgument,
            "galois exponent not coprime to the order");
    const CycContext& ctx = CycContext::get(order_);
    std::vector<Rat> dense(static_cast<std::size_t>(ctx.phi), Rat(0));
    for (const Term& t : terms_) {
        long e = (t.first * j) % order_;
        if (e < ctx.phi) {
            dense[e] += t.second;
        } else {
            const std::vector<Int>& r = ctx.row(e);
            for (long k = 0; k < ctx.phi; ++k)
                if (r[k] != 0) dense[k] += t.second * Rat(r[k]);
        }
    }
    Cyc out(order_);
    out.normalize(std::move(dense));
    return out;
}

namespace {

// Rational polynomials for the extended Euclid used by inversion.
using QPoly = std::vector<Rat>;

QPoly qpoly_trim(QPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly c(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return qpoly_trim(std::move(c));
}

QPoly qpoly_sub(QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rat(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return qpoly_trim(std::move(a));
}

// Division with remainder over Q.
std::pair<QPoly, QPoly> qpoly_divmod(QPoly num, const QPoly& den) {
    QPoly quot;
    if (num.size() >= den.size()) quot.assign(num.size() - den.size() + 1, Rat(0));
    while (num.size() >= den.size() && !num.empty()) {
        Rat c = num.back() / den.back();
        std::size_t k = num.size() - den.size();
        quot[k] = c;
        for (std::size_t i = 0; i < den.size(); ++i) num[k + i] -= c * den[i];
        num = qpoly_trim(std::move(num));
    }
    return {qpoly_trim(std::move(quot)), std::move(num)};
}

} // namespace

Cyc Cyc::inv() const {
    require(!is_zero(), ErrorKind::DivisionByZero, "inverse of zero cyclotomic value");
    if (is_rational()) return Cyc(order_, Rat(1) / terms_[0].second);
    if (terms_.size() == 1) {
        // c * zeta^e inverts to (1/c) * zeta^{N-e}.
        return Cyc::root(order_, order_ - terms_[0].first) * (Rat(1) / terms_[0].second);
    }
    // Extended Euclid against Phi_N over Q: u*a + v*Phi = 1.
    const CycContext& ctx = CycContext::get(order_);
    QPoly a(static_cast<std::size_t>(ctx.phi), Rat(0));
    for (const Term& t : terms_) a[t.first] = t.second;
    a = qpoly_trim(std::move(a));
    QPoly b(ctx.min_poly.size());
    for (std::size_t i = 0; i < ctx.min_poly.size(); ++i) b[i] = Rat(ctx.min_poly[i]);

    QPoly r0 = b, r1 = a;
    QPoly u0 = {}, u1 = {Rat(1)}; // coefficients of `a` in r0, r1
    while (!r1.empty()) {
        auto [q, r2] = qpoly_divmod(r0, r1);
        QPoly u2 = qpoly_sub(u0, qpoly_mul(q, u1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    // r0 is the gcd; Phi_N is irreducible over Q so r0 is a nonzero constant.
    require(r0.size() == 1, ErrorKind::Internal, "cyclotomic inversion found a nontrivial gcd");
    Rat scale = Rat(1) / r0[0];
    std::vector<Rat> dense(static_cast<std::size_t>(ctx.phi), Rat(0));
    for (std::size_t i = 0; i < u0.size(); ++i) dense[i] = u0[i] * scale;
    Cyc out(order_);
    out.normalize(std::move(dense));
    return out;
}

Cyc Cyc::lift_to_order(long new_order) const {
    require(new_order % order_ == 0, ErrorKind::InvalidOrder,
            "lift target order must be a multiple of the current order");
    if (new_order == order_) return *this;
    long step = new_order / order_;
    Cyc out = Cyc::zero(new_order);
    for (const Term& t : terms_) out += Cyc::root(new_order, t.first * step) * t.second;
    return out;
}

bool Cyc::operator==(const Cyc& o) const {
    if (order_ == o.order_) return terms_ == o.terms_;
    long l = lcm_order(order_, o.order_);
    return lift_to_order(l).terms_ == o.lift_to_order(l).terms_;
}

std::complex<long double> Cyc::to_complex() const {
    const long double pi = 3.14159265358979323846264338327950288L;
    std::complex<long double> acc(0.0L, 0.0L);
    for (const Term& t : terms_) {
        long double arg = 2.0L * pi * static_cast<long double>(t.first) / static_cast<long double>(order_);
        long double c = t.second.get_d();
        acc += std::complex<long double>(c * std::cos(arg), c * std::sin(arg));
    }
    return acc;
}

std::string cyc_to_complex_string(const Cyc& a, int digits) {
    require(digits >= 1 && digits <= 15, ErrorKind::InvalidArgument,
            "digits must lie in [1, 15]");
    std::complex<long double> z = a.to_complex();
    // Snap magnitudes below the rendered precision to exact zero so the
    // output never reads "-0.000".
    long double snap = 0.5L * std::pow(10.0L, static_cast<long double>(-digits));
    long double re_l = std::abs(z.real()) < snap ? 0.0L : z.real();
    long double im_l = std::abs(z.imag()) < snap ? 0.0L : z.imag();
    std::ostringstream os;
    os.precision(digits);
    os << std::fixed << static_cast<double>(re_l);
    double im = static_cast<double>(im_l);
    os << (im < 0 ? " - " : " + ");
    std::ostringstream imos;
    imos.precision(digits);
    imos << std::fixed << std::abs(im);
    os << imos.str() << "i";
    return os.str();
}

nlohmann::json Cyc::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const Term& t : terms_)
        terms.push_back({t.first, rat_to_string(t.second)});
    return nlohmann::json{{"order", order_}, {"coeffs", terms}};
}

Cyc Cyc::from_json(const nlohmann::json& j) {
    require(j.contains("order") && j.contains("coeffs"), ErrorKind::InvalidArgument,
            "cyclotomic JSON needs 'order' and 'coeffs'");
    Cyc out(j["order"].get<long>());
    const CycContext& ctx = CycContext::get(out.order_);
    std::vector<Rat> dense(static_cast<std::size_t>(ctx.phi), Rat(0));
    for (const auto& t : j["coeffs"]) {
        long e = t.at(0).get<long>();
        require(e >= 0 && e < ctx.phi, ErrorKind::InvalidArgument,
                "cyclotomic JSON exponent out of canonical range");
        dense[e] += rat_from_string(t.at(1).get<std::string>());
    }
    out.normalize(std::move(dense));
    return out;
}

std::string Cyc::to_string() const {
    if (is_rational()) return rat_to_string(terms_.empty() ? Rat(0) : terms_[0].second);
    std::ostringstream os;
    bool first = true;
    for (const Term& t : terms_) {
        if (!first) os << " + ";
        first = false;
        os << rat_to_string(t.second);
        if (t.first > 0) os << "*z^" << t.first;
    }
    os << " (order " << order_ << ")";
    return os.str();
}

} // namespace charfn
