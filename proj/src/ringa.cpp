#include "charfn/ringa.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "charfn/config.hpp"
#include "charfn/error.hpp"

namespace charfn {

std::uint64_t ARDesc::size() const {
    std::uint64_t s = 1;
    for (int i = 0; i < r; ++i) s *= static_cast<std::uint64_t>(base->q);
    return s;
}

std::uint64_t ARDesc::unit_count() const {
    return size() / static_cast<std::uint64_t>(base->q) *
           static_cast<std::uint64_t>(base->q - 1);
}

const ARDesc* ar_ring(int p, int qa, int m, int r) {
    require(r >= 1, ErrorKind::InvalidArgument, "truncation order must be >= 1");
    require(qa >= 1 && m >= 1, ErrorKind::InvalidArgument, "field levels must be >= 1");
    static std::map<std::tuple<int, int, int, int>, std::unique_ptr<ARDesc>> registry;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(p, qa, m, r);
    auto it = registry.find(key);
    if (it == registry.end()) {
        auto d = std::make_unique<ARDesc>();
        d->base = gf(p, qa * m);
        d->r = r;
        d->qa = qa;
        d->q = 1;
        for (int i = 0; i < qa; ++i) d->q *= p;
        // keep (q^m)^r representable: the field bound already caps q^m, and
        // r beyond 64 bits of code space is far outside any configured use
        require(static_cast<double>(r) * std::log2(static_cast<double>(d->base->q)) < 63.0,
                ErrorKind::ResourceLimit, "ring too large to enumerate codes");
        it = registry.emplace(key, std::move(d)).first;
    }
    return it->second.get();
}

ARElem ar_zero(const ARDesc* d) {
    return {d, std::vector<std::uint32_t>(static_cast<std::size_t>(d->r), 0)};
}

ARElem ar_one(const ARDesc* d) {
    ARElem x = ar_zero(d);
    x.c[0] = 1;
    return x;
}

ARElem ar_eps(const ARDesc* d) {
    require(d->r >= 2, ErrorKind::InvalidArgument, "eps needs truncation order >= 2");
    ARElem x = ar_zero(d);
    x.c[1] = 1;
    return x;
}

ARElem ar_from_coeffs(const ARDesc* d, std::vector<std::uint32_t> coeffs) {
    require(coeffs.size() == static_cast<std::size_t>(d->r), ErrorKind::InvalidArgument,
            "coefficient vector length must equal the truncation order");
    for (std::uint32_t c : coeffs)
        require(c < static_cast<std::uint32_t>(d->base->q), ErrorKind::InvalidArgument,
                "coefficient code out of range");
    return {d, std::move(coeffs)};
}

namespace {
void check_same_ring(const ARElem& x, const ARElem& y) {
    require(x.ring == y.ring, ErrorKind::InvalidArgument,
            "operands live in different truncated rings");
}
} // namespace

ARElem ar_add(const ARElem& x, const ARElem& y) {
    check_same_ring(x, y);
    ARElem out = x;
    for (int i = 0; i < x.ring->r; ++i) out.c[i] = x.ring->base->add(x.c[i], y.c[i]);
    return out;
}

ARElem ar_neg(const ARElem& x) {
    ARElem out = x;
    for (auto& c : out.c) c = x.ring->base->neg(c);
    return out;
}

ARElem ar_sub(const ARElem& x, const ARElem& y) { return ar_add(x, ar_neg(y)); }

ARElem ar_mul(const ARElem& x, const ARElem& y) {
    check_same_ring(x, y);
    const FqDesc* f = x.ring->base;
    ARElem out = ar_zero(x.ring);
    int r = x.ring->r;
    for (int i = 0; i < r; ++i) {
        if (x.c[i] == 0) continue;
        for (int j = 0; i + j < r; ++j)
            out.c[i + j] = f->add(out.c[i + j], f->mul(x.c[i], y.c[j]));
    }
    return out;
}

bool ar_is_unit(const ARElem& x) { return x.c[0] != 0; }

ARElem ar_inv(const ARElem& x) {
    require(ar_is_unit(x), ErrorKind::NotAUnit, "inverse of a non-unit");
    const FqDesc* f = x.ring->base;
    // x = a0 (1 + n) with n nilpotent; invert by the truncated geometric series
    std::uint32_t a0inv = f->inv(x.c[0]);
    ARElem n = x;
    for (auto& c : n.c) c = f->mul(c, a0inv);
    n.c[0] = 0; // n = x/a0 - 1
    ARElem acc = ar_one(x.ring);
    ARElem pw = ar_one(x.ring);
    for (int k = 1; k < x.ring->r; ++k) {
        pw = ar_mul(pw, ar_neg(n));
        acc = ar_add(acc, pw);
    }
    for (auto& c : acc.c) c = f->mul(c, a0inv);
    return acc;
}

ARElem ar_pow(const ARElem& x, long e) {
    if (e < 0) return ar_pow(ar_inv(x), -e);
    ARElem acc = ar_one(x.ring);
    ARElem base = x;
    while (e > 0) {
        if (e & 1) acc = ar_mul(acc, base);
        base = ar_mul(base, base);
        e >>= 1;
    }
    return acc;
}

ARElem ar_frobq(const ARElem& x, int times) {
    const FqDesc* f = x.ring->base;
    int k = (x.ring->qa * times) % f->a;
    if (k < 0) k += f->a;
    ARElem out = x;
    for (auto& c : out.c) c = f->frob(c, k);
    return out;
}

ARElem ar_norm(const ARElem& x, int down_m) {
    require(ar_is_unit(x), ErrorKind::NotAUnit, "norm of a non-unit");
    int m = x.ring->m();
    require(down_m >= 1 && m % down_m == 0, ErrorKind::InvalidLevel,
            "norm target must be a divisor level");
    int n = m / down_m;
    ARElem acc = x;
    ARElem cur = x;
    for (int i = 1; i < n; ++i) {
        cur = ar_frobq(cur, down_m);
        acc = ar_mul(acc, cur);
    }
    const ARDesc* down =
        ar_ring(x.ring->base->p, x.ring->qa, down_m, x.ring->r);
    const FieldTower& tw = FieldTower::get(x.ring->base->p, x.ring->base->a);
    ARElem out = ar_zero(down);
    for (int i = 0; i < x.ring->r; ++i)
        out.c[i] = tw.project(x.ring->base->a, down->base->a, acc.c[i]);
    return out;
}

std::uint64_t ar_code(const ARElem& x) {
    std::uint64_t code = 0;
    for (int i = x.ring->r - 1; i >= 0; --i)
        code = code * static_cast<std::uint64_t>(x.ring->base->q) + x.c[i];
    return code;
}

ARElem ar_from_code(const ARDesc* d, std::uint64_t code) {
    ARElem x = ar_zero(d);
    for (int i = 0; i < d->r; ++i) {
        x.c[i] = static_cast<std::uint32_t>(code % static_cast<std::uint64_t>(d->base->q));
        code /= static_cast<std::uint64_t>(d->base->q);
    }
    require(code == 0, ErrorKind::InvalidArgument, "element code out of range");
    return x;
}

std::vector<ARElem> ar_units(const ARDesc* d) {
    require(d->unit_count() <= Config::global().max_group_order, ErrorKind::ResourceLimit,
            "unit group exceeds the configured group-order bound");
    std::vector<ARElem> out;
    out.reserve(static_cast<std::size_t>(d->unit_count()));
    for (std::uint64_t code = 0; code < d->size(); ++code) {
        ARElem x = ar_from_code(d, code);
        if (ar_is_unit(x)) out.push_back(std::move(x));
    }
    return out;
}

std::string ar_to_string(const ARElem& x) {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < x.ring->r; ++i) {
        if (x.c[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        std::string s = x.ring->base->to_string(x.c[i]);
        bool composite = s.find('+') != std::string::npos;
        if (i == 0) {
            os << s;
        } else {
            if (s != "1") os << (composite ? "(" + s + ")" : s) << "*";
            os << "eps";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) return "0";
    return os.str();
}

nlohmann::json ar_to_json(const ARElem& x) {
    nlohmann::json out = nlohmann::json::array();
    for (int i = 0; i < x.ring->r; ++i) {
        nlohmann::json digits = nlohmann::json::array();
        std::uint32_t rest = x.c[i];
        for (int k = 0; k < x.ring->base->a; ++k) {
            digits.push_back(rest % static_cast<std::uint32_t>(x.ring->base->p));
            rest /= static_cast<std::uint32_t>(x.ring->base->p);
        }
        out.push_back(std::move(digits));
    }
    return out;
}

} // namespace charfn
