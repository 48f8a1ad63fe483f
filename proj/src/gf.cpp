#include "charfn/gf.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "charfn/config.hpp"
#include "charfn/error.hpp"

namespace charfn {

namespace {

// --- dense polynomial helpers over F_p (coefficient vectors, ascending,
// trimmed) used only during field construction -------------------------

using PPoly = std::vector<int>;

PPoly ppoly_trim(PPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

PPoly ppoly_mulmod(const PPoly& a, const PPoly& b, const PPoly& mod, int p) {
    std::vector<int> c(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = static_cast<int>((c[i + j] + static_cast<long>(a[i]) * b[j]) % p);
    // reduce modulo the monic `mod`
    long dm = static_cast<long>(mod.size()) - 1;
    for (long k = static_cast<long>(c.size()) - 1; k >= dm; --k) {
        int top = c[k];
        if (top == 0) continue;
        c[k] = 0;
        for (long i = 0; i < dm; ++i)
            c[k - dm + i] = static_cast<int>(((c[k - dm + i] - static_cast<long>(top) * mod[i]) % p + p) % p);
    }
    c.resize(static_cast<std::size_t>(dm));
    return c;
}

PPoly ppoly_powmod(PPoly base, Int e, const PPoly& mod, int p) {
    PPoly r{1};
    r.resize(mod.size() - 1, 0);
    base = ppoly_mulmod(base, PPoly{1}, mod, p); // reduce the base first
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = ppoly_mulmod(r, base, mod, p);
        base = ppoly_mulmod(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

PPoly ppoly_gcd(PPoly a, PPoly b, int p) {
    a = ppoly_trim(std::move(a));
    b = ppoly_trim(std::move(b));
    auto invmod = [p](int x) {
        int r = 1, e = p - 2, base = ((x % p) + p) % p;
        while (e > 0) {
            if (e & 1) r = static_cast<int>(static_cast<long>(r) * base % p);
            base = static_cast<int>(static_cast<long>(base) * base % p);
            e >>= 1;
        }
        return r;
    };
    while (!b.empty()) {
        // a mod b
        int lead_inv = invmod(b.back());
        while (a.size() >= b.size()) {
            int c = static_cast<int>(static_cast<long>(a.back()) * lead_inv % p);
            std::size_t k = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[k + i] = static_cast<int>((((a[k + i] - static_cast<long>(c) * b[i]) % p) + p) % p);
            a = ppoly_trim(std::move(a));
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

std::vector<long> prime_factors(long n) {
    std::vector<long> ps;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            ps.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_irreducible(const PPoly& f, int p) {
    int a = static_cast<int>(f.size()) - 1;
    if (a == 1) return true;
    // x^{p^a} == x mod f, and x^{p^{a/l}} - x coprime to f for primes l | a.
    PPoly x{0, 1};
    PPoly xp = ppoly_powmod(x, Int(p), f, p); // x^p mod f
    std::vector<PPoly> frob_powers{ppoly_trim(PPoly(xp))};
    PPoly cur = xp;
    for (int i = 1; i < a; ++i) {
        // cur = cur^p mod f: apply powmod again
        cur = ppoly_powmod(cur, Int(p), f, p);
        frob_powers.push_back(ppoly_trim(PPoly(cur)));
    }
    PPoly xa = frob_powers[a - 1]; // x^{p^a}
    PPoly xx = ppoly_trim(PPoly{0, 1});
    if (xa != xx) return false;
    for (long l : prime_factors(a)) {
        PPoly t = frob_powers[a / l - 1];
        // t - x
        PPoly diff = t;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = static_cast<int>(((diff[1] - 1) % p + p) % p);
        diff = ppoly_trim(std::move(diff));
        PPoly g = ppoly_gcd(diff, f, p);
        if (static_cast<int>(g.size()) - 1 != 0) return false;
    }
    return true;
}

bool root_is_primitive(const PPoly& f, int p) {
    int a = static_cast<int>(f.size()) - 1;
    Int q = 1;
    for (int i = 0; i < a; ++i) q *= p;
    Int order = q - 1;
    if (order == 1) {
        // F_2: the unit group is trivial; the root must be 1, i.e. f = x + 1.
        return f.size() == 2 && f[0] == 1;
    }
    PPoly x{0, 1};
    for (long l : prime_factors(order.get_si())) {
        PPoly t = ppoly_powmod(x, order / l, f, p);
        if (t == PPoly{1} || (ppoly_trim(PPoly(t)) == PPoly{1})) return false;
    }
    // also x must be a unit: f(0) != 0
    return f[0] != 0;
}

std::uint32_t digits_to_code(const PPoly& digits, int p, int a) {
    std::uint32_t code = 0;
    for (int i = a - 1; i >= 0; --i)
        code = code * static_cast<std::uint32_t>(p) +
               static_cast<std::uint32_t>(i < static_cast<int>(digits.size()) ? digits[i] : 0);
    return code;
}

PPoly code_to_digits(std::uint32_t code, int p, int a) {
    PPoly d(static_cast<std::size_t>(a), 0);
    for (int i = 0; i < a; ++i) {
        d[i] = static_cast<int>(code % static_cast<std::uint32_t>(p));
        code /= static_cast<std::uint32_t>(p);
    }
    return d;
}

std::unique_ptr<FqDesc> build_field(int p, int a) {
    require(is_prime(static_cast<long>(p)), ErrorKind::InvalidArgument,
            "field characteristic must be prime, got " + std::to_string(p));
    require(a >= 1, ErrorKind::InvalidArgument, "field degree must be >= 1");
    long q = 1;
    for (int i = 0; i < a; ++i) {
        q *= p;
        require(static_cast<std::uint64_t>(q) <= Config::global().max_field_size,
                ErrorKind::ResourceLimit,
                "field size p^a exceeds the configured bound");
    }

    auto d = std::make_unique<FqDesc>();
    d->p = p;
    d->a = a;
    d->q = q;

    // Deterministic modulus: scan monic degree-a polynomials in code order
    // (constant digit least significant), take the first irreducible with a
    // primitive root; remember the first merely irreducible as a fallback.
    PPoly fallback;
    for (long code = 0; code < q; ++code) {
        PPoly f = code_to_digits(static_cast<std::uint32_t>(code), p, a);
        f.push_back(1); // monic
        if (!is_irreducible(f, p)) continue;
        if (fallback.empty()) fallback = f;
        if (root_is_primitive(f, p)) {
            d->modulus = f;
            break;
        }
    }
    if (d->modulus.empty()) {
        require(!fallback.empty(), ErrorKind::Internal, "no irreducible modulus found");
        d->modulus = fallback;
    }

    // Multiplication tables from powers of a generator.  When the modulus
    // root is primitive the generator is w itself.
    PPoly mod = d->modulus;
    auto mul_raw = [&](std::uint32_t x, std::uint32_t y) {
        PPoly fx = code_to_digits(x, p, a), fy = code_to_digits(y, p, a);
        return digits_to_code(ppoly_mulmod(fx, fy, mod, p), p, a);
    };
    std::uint32_t gen = 0;
    if (root_is_primitive(mod, p)) {
        gen = digits_to_code(PPoly{0, 1}, p, a); // w
        if (a == 1) {
            // degree-1 modulus x + c: the root is -c
            gen = static_cast<std::uint32_t>(((-mod[0]) % p + p) % p);
        }
    } else {
        // fallback modulus: scan for a generator by order
        for (std::uint32_t cand = 1; cand < static_cast<std::uint32_t>(q); ++cand) {
            std::uint32_t t = cand;
            long order = 1;
            while (t != 1) {
                t = mul_raw(t, cand);
                ++order;
            }
            if (order == q - 1) {
                gen = cand;
                break;
            }
        }
        require(gen != 0, ErrorKind::Internal, "no multiplicative generator found");
    }
    d->gen = gen;

    d->exp_.resize(static_cast<std::size_t>(q - 1));
    d->dlog_.assign(static_cast<std::size_t>(q), -1);
    std::uint32_t cur = 1;
    for (long i = 0; i < q - 1; ++i) {
        d->exp_[static_cast<std::size_t>(i)] = cur;
        require(d->dlog_[cur] == -1, ErrorKind::Internal, "generator has small order");
        d->dlog_[cur] = static_cast<std::int32_t>(i);
        cur = mul_raw(cur, gen);
    }
    require(cur == 1, ErrorKind::Internal, "generator order mismatch");

    if (p != 2 && q <= 1024) {
        d->addt_.resize(static_cast<std::size_t>(q) * static_cast<std::size_t>(q));
        for (long x = 0; x < q; ++x) {
            PPoly fx = code_to_digits(static_cast<std::uint32_t>(x), p, a);
            for (long y = 0; y < q; ++y) {
                PPoly fy = code_to_digits(static_cast<std::uint32_t>(y), p, a);
                PPoly s(static_cast<std::size_t>(a));
                for (int i = 0; i < a; ++i) s[i] = (fx[i] + fy[i]) % p;
                d->addt_[static_cast<std::size_t>(x) * q + y] = digits_to_code(s, p, a);
            }
        }
    }
    return d;
}

} // namespace

std::uint32_t FqDesc::add(std::uint32_t x, std::uint32_t y) const {
    if (p == 2) return x ^ y;
    if (!addt_.empty()) return addt_[static_cast<std::size_t>(x) * q + y];
    std::uint32_t out = 0, base = 1;
    for (int i = 0; i < a; ++i) {
        std::uint32_t dx = x % p, dy = y % p;
        out += ((dx + dy) % p) * base;
        x /= p;
        y /= p;
        base *= p;
    }
    return out;
}

std::uint32_t FqDesc::neg(std::uint32_t x) const {
    if (p == 2) return x;
    std::uint32_t out = 0, base = 1;
    for (int i = 0; i < a; ++i) {
        std::uint32_t dx = x % p;
        out += ((p - dx) % p) * base;
        x /= p;
        base *= p;
    }
    return out;
}

std::uint32_t FqDesc::sub(std::uint32_t x, std::uint32_t y) const { return add(x, neg(y)); }

std::uint32_t FqDesc::mul(std::uint32_t x, std::uint32_t y) const {
    if (x == 0 || y == 0) return 0;
    long e = (static_cast<long>(dlog_[x]) + dlog_[y]) % (q - 1);
    return exp_[static_cast<std::size_t>(e)];
}

std::uint32_t FqDesc::inv(std::uint32_t x) const {
    require(x != 0, ErrorKind::NotAUnit, "inverse of zero field element");
    long e = (q - 1 - dlog_[x]) % (q - 1);
    return exp_[static_cast<std::size_t>(e)];
}

std::uint32_t FqDesc::pow(std::uint32_t x, long e) const {
    if (x == 0) {
        require(e > 0, ErrorKind::NotAUnit, "zero raised to a nonpositive power");
        return 0;
    }
    long d = dlog_[x];
    long m = ((d * (e % (q - 1))) % (q - 1) + (q - 1)) % (q - 1);
    return exp_[static_cast<std::size_t>(m)];
}

std::uint32_t FqDesc::frob(std::uint32_t x, int k) const {
    if (x == 0) return 0;
    long pk = 1;
    for (int i = 0; i < k % a; ++i) pk = (pk * p) % (q - 1);
    long e = (static_cast<long>(dlog_[x]) * pk) % (q - 1);
    return exp_[static_cast<std::size_t>(e)];
}

long FqDesc::dlog(std::uint32_t x) const {
    require(x != 0, ErrorKind::NotAUnit, "discrete log of zero");
    return dlog_[x];
}

std::string FqDesc::to_string(std::uint32_t x) const {
    if (x == 0) return "0";
    std::ostringstream os;
    bool first = true;
    std::uint32_t rest = x;
    for (int i = 0; i < a; ++i) {
        int c = static_cast<int>(rest % p);
        rest /= p;
        if (c == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << c;
        } else {
            if (c != 1) os << c << "*";
            os << "w";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

const FqDesc* gf(int p, int a) {
    static std::map<std::pair<int, int>, std::unique_ptr<FqDesc>> registry;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, a);
    auto it = registry.find(key);
    if (it == registry.end()) it = registry.emplace(key, build_field(p, a)).first;
    return it->second.get();
}

// --- towers ------------------------------------------------------------

FieldTower::FieldTower(int p, int top) : p_(p), top_(top) {
    require(top >= 1, ErrorKind::InvalidLevel, "tower top must be >= 1");
    const FqDesc* anchor = gf(p, top);
    for (int m = 1; m <= top; ++m) {
        if (top % m != 0) continue;
        const FqDesc* fm = gf(p, m);
        fields_[m] = fm;
        if (m == top) continue; // the anchor represents itself

        // Image of F_{p^m} in the anchor: first root of fm->modulus among
        // the elements of the unique subfield of size p^m (the elements of
        // multiplicative order dividing p^m - 1, plus zero).
        std::uint32_t root = 0;
        bool found = false;
        long sub_order = fm->q - 1;
        long step = sub_order > 0 ? (anchor->q - 1) / sub_order : 0;
        std::vector<std::uint32_t> candidates;
        candidates.push_back(0);
        for (long i = 0; i < sub_order; ++i)
            candidates.push_back(anchor->exp_[static_cast<std::size_t>(i * step)]);
        std::sort(candidates.begin(), candidates.end());
        for (std::uint32_t c : candidates) {
            // Horner evaluation of the modulus at c inside the anchor.
            std::uint32_t acc = 0;
            for (int i = fm->a; i >= 0; --i) {
                acc = anchor->mul(acc, c);
                acc = anchor->add(acc, static_cast<std::uint32_t>(fm->modulus[i]) % p);
            }
            if (acc == 0) {
                root = c;
                found = true;
                break;
            }
        }
        require(found, ErrorKind::Internal, "modulus has no root in the anchor field");

        std::vector<std::uint32_t> into(static_cast<std::size_t>(fm->q));
        std::unordered_map<std::uint32_t, std::uint32_t> back;
        back.reserve(static_cast<std::size_t>(fm->q) * 2);
        for (long x = 0; x < fm->q; ++x) {
            std::uint32_t rest = static_cast<std::uint32_t>(x);
            std::uint32_t acc = 0, power = 1;
            for (int i = 0; i < fm->a; ++i) {
                std::uint32_t digit = rest % static_cast<std::uint32_t>(p);
                rest /= static_cast<std::uint32_t>(p);
                if (digit != 0) acc = anchor->add(acc, anchor->mul(digit, power));
                power = anchor->mul(power, root);
            }
            into[static_cast<std::size_t>(x)] = acc;
            back.emplace(acc, static_cast<std::uint32_t>(x));
        }
        require(back.size() == static_cast<std::size_t>(fm->q), ErrorKind::Internal,
                "subfield embedding is not injective");
        into_anchor_[m] = std::move(into);
        from_anchor_[m] = std::move(back);
    }
}

const FieldTower& FieldTower::get(int p, int top) {
    static std::map<std::pair<int, int>, std::unique_ptr<FieldTower>> registry;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, top);
    auto it = registry.find(key);
    if (it == registry.end())
        it = registry.emplace(key, std::unique_ptr<FieldTower>(new FieldTower(p, top))).first;
    return *it->second;
}

const FqDesc* FieldTower::field(int level) const {
    auto it = fields_.find(level);
    require(it != fields_.end(), ErrorKind::InvalidLevel,
            "level " + std::to_string(level) + " does not divide the tower top " +
                std::to_string(top_));
    return it->second;
}

std::uint32_t FieldTower::to_anchor(int level, std::uint32_t x) const {
    field(level); // validates the level
    if (level == top_) return x;
    return into_anchor_.at(level)[x];
}

std::uint32_t FieldTower::embed(int from, int to, std::uint32_t x) const {
    require(to % from == 0, ErrorKind::InvalidLevel, "embedding target must be a multiple level");
    std::uint32_t anchor_code = to_anchor(from, x);
    if (to == top_) return anchor_code;
    field(to);
    auto it = from_anchor_.at(to).find(anchor_code);
    require(it != from_anchor_.at(to).end(), ErrorKind::Internal,
            "subfield containment failure in tower");
    return it->second;
}

std::uint32_t FieldTower::project(int from, int to, std::uint32_t x) const {
    require(from % to == 0, ErrorKind::InvalidLevel, "projection target must be a divisor level");
    std::uint32_t anchor_code = to_anchor(from, x);
    if (to == top_) return anchor_code;
    field(to);
    auto it = from_anchor_.at(to).find(anchor_code);
    require(it != from_anchor_.at(to).end(), ErrorKind::InvalidArgument,
            "element does not lie in the requested subfield");
    return it->second;
}

bool FieldTower::in_subfield(int from, int to, std::uint32_t x) const {
    std::uint32_t anchor_code = to_anchor(from, x);
    if (to == top_) return true;
    field(to);
    return from_anchor_.at(to).count(anchor_code) > 0;
}

// --- trace / norm ------------------------------------------------------

std::uint32_t gf_trace(const FqDesc* f, int sub_a, std::uint32_t x) {
    require(sub_a >= 1 && f->a % sub_a == 0, ErrorKind::InvalidArgument,
            "trace target is not a subfield");
    std::uint32_t acc = 0, cur = x;
    int steps = f->a / sub_a;
    for (int i = 0; i < steps; ++i) {
        acc = f->add(acc, cur);
        cur = f->frob(cur, sub_a);
    }
    if (sub_a == 1) return acc; // constants carry their prime-field code
    return FieldTower::get(f->p, f->a).project(f->a, sub_a, acc);
}

std::uint32_t gf_norm(const FqDesc* f, int sub_a, std::uint32_t x) {
    require(sub_a >= 1 && f->a % sub_a == 0, ErrorKind::InvalidArgument,
            "norm target is not a subfield");
    std::uint32_t acc = 1, cur = x;
    int steps = f->a / sub_a;
    if (x == 0) return 0;
    for (int i = 0; i < steps; ++i) {
        acc = f->mul(acc, cur);
        cur = f->frob(cur, sub_a);
    }
    if (sub_a == 1) return acc;
    return FieldTower::get(f->p, f->a).project(f->a, sub_a, acc);
}

// --- characters ---------------------------------------------------------

long add_char_exp(const FqDesc* f, std::uint32_t t, std::uint32_t x) {
    return static_cast<long>(gf_trace(f, 1, f->mul(t, x)));
}

Cyc add_char_eval(const FqDesc* f, std::uint32_t t, std::uint32_t x) {
    return Cyc::root(f->p, add_char_exp(f, t, x));
}

long mul_char_exp(const FqDesc* f, long j, std::uint32_t x) {
    require(x != 0, ErrorKind::InvalidArgument,
            "multiplicative character evaluated off the unit group");
    long m = f->q - 1;
    return ((j % m) * f->dlog(x) % m + m) % m;
}

Cyc mul_char_eval(const FqDesc* f, long j, std::uint32_t x) {
    if (f->q == 2) return Cyc::one(1); // trivial unit group
    return Cyc::root(f->q - 1, mul_char_exp(f, j, x));
}

} // namespace charfn
