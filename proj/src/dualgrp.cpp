#include "charfn/dualgrp.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "charfn/config.hpp"
#include "charfn/error.hpp"

namespace charfn {

namespace {

constexpr std::uint64_t kTooBig = std::numeric_limits<std::uint64_t>::max();

std::uint64_t pack2(std::uint64_t x, std::uint64_t y) { return (x << 32) | y; }
std::uint32_t hi32(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }
std::uint32_t lo32(std::uint64_t v) { return static_cast<std::uint32_t>(v); }

std::uint64_t checked_mul(std::uint64_t x, std::uint64_t y) {
    if (x != 0 && y > kTooBig / x) return kTooBig;
    return x * y;
}

std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e-- > 0) r = checked_mul(r, b);
    return r;
}

std::uint64_t group_order_formula(DualKind kind, std::uint64_t big_q) {
    switch (kind) {
        case DualKind::k_add: return big_q;
        case DualKind::k_mul: return big_q - 1;
        case DualKind::k_add2: return checked_mul(big_q, big_q);
        case DualKind::a2_units: return checked_mul(big_q, big_q - 1);
        case DualKind::torus_a2: {
            std::uint64_t u = checked_mul(big_q, big_q - 1);
            return checked_mul(u, u);
        }
    }
    return kTooBig;
}

const ARDesc* level_ring(int p, int a, int m) { return ar_ring(p, a, m, 2); }

std::uint64_t raw_id(DualKind kind, int p, int a, int m) {
    switch (kind) {
        case DualKind::k_add: return 0;
        case DualKind::k_mul: return 1;
        case DualKind::k_add2: return 0;
        case DualKind::a2_units: return ar_code(ar_one(level_ring(p, a, m)));
        case DualKind::torus_a2: {
            std::uint64_t one = ar_code(ar_one(level_ring(p, a, m)));
            return pack2(one, one);
        }
    }
    return 0;
}

std::uint64_t raw_op(DualKind kind, int p, int a, int m, std::uint64_t x, std::uint64_t y) {
    switch (kind) {
        case DualKind::k_add: {
            const FqDesc* f = gf(p, a * m);
            return f->add(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y));
        }
        case DualKind::k_mul: {
            const FqDesc* f = gf(p, a * m);
            return f->mul(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y));
        }
        case DualKind::k_add2: {
            const FqDesc* f = gf(p, a * m);
            return pack2(f->add(hi32(x), hi32(y)), f->add(lo32(x), lo32(y)));
        }
        case DualKind::a2_units: {
            const ARDesc* d = level_ring(p, a, m);
            return ar_code(ar_mul(ar_from_code(d, x), ar_from_code(d, y)));
        }
        case DualKind::torus_a2: {
            const ARDesc* d = level_ring(p, a, m);
            return pack2(ar_code(ar_mul(ar_from_code(d, hi32(x)), ar_from_code(d, hi32(y)))),
                         ar_code(ar_mul(ar_from_code(d, lo32(x)), ar_from_code(d, lo32(y)))));
        }
    }
    return 0;
}

std::uint64_t raw_frob(DualKind kind, int p, int a, int m, std::uint64_t x) {
    switch (kind) {
        case DualKind::k_add:
        case DualKind::k_mul: {
            const FqDesc* f = gf(p, a * m);
            return f->frob(static_cast<std::uint32_t>(x), a);
        }
        case DualKind::k_add2: {
            const FqDesc* f = gf(p, a * m);
            return pack2(f->frob(hi32(x), a), f->frob(lo32(x), a));
        }
        case DualKind::a2_units: {
            const ARDesc* d = level_ring(p, a, m);
            return ar_code(ar_frobq(ar_from_code(d, x), 1));
        }
        case DualKind::torus_a2: {
            const ARDesc* d = level_ring(p, a, m);
            return pack2(ar_code(ar_frobq(ar_from_code(d, hi32(x)), 1)),
                         ar_code(ar_frobq(ar_from_code(d, lo32(x)), 1)));
        }
    }
    return 0;
}

std::uint64_t raw_ar_embed(int p, int a, int from, int to, std::uint64_t code) {
    const ARDesc* dfrom = level_ring(p, a, from);
    const ARDesc* dto = level_ring(p, a, to);
    const FieldTower& tw = FieldTower::get(p, a * to);
    ARElem x = ar_from_code(dfrom, code);
    ARElem out = ar_zero(dto);
    for (int i = 0; i < 2; ++i) out.c[i] = tw.embed(a * from, a * to, x.c[i]);
    return ar_code(out);
}

std::uint64_t raw_embed(DualKind kind, int p, int a, int from, int to, std::uint64_t x) {
    switch (kind) {
        case DualKind::k_add:
        case DualKind::k_mul: {
            const FieldTower& tw = FieldTower::get(p, a * to);
            return tw.embed(a * from, a * to, static_cast<std::uint32_t>(x));
        }
        case DualKind::k_add2: {
            const FieldTower& tw = FieldTower::get(p, a * to);
            return pack2(tw.embed(a * from, a * to, hi32(x)), tw.embed(a * from, a * to, lo32(x)));
        }
        case DualKind::a2_units:
            return raw_ar_embed(p, a, from, to, x);
        case DualKind::torus_a2:
            return pack2(raw_ar_embed(p, a, from, to, hi32(x)),
                         raw_ar_embed(p, a, from, to, lo32(x)));
    }
    return 0;
}

std::uint64_t raw_norm(DualKind kind, int p, int a, int from, int to, std::uint64_t x) {
    switch (kind) {
        case DualKind::k_add:
            return gf_trace(gf(p, a * from), a * to, static_cast<std::uint32_t>(x));
        case DualKind::k_mul:
            return gf_norm(gf(p, a * from), a * to, static_cast<std::uint32_t>(x));
        case DualKind::k_add2: {
            const FqDesc* f = gf(p, a * from);
            return pack2(gf_trace(f, a * to, hi32(x)), gf_trace(f, a * to, lo32(x)));
        }
        case DualKind::a2_units:
            return ar_code(ar_norm(ar_from_code(level_ring(p, a, from), x), to));
        case DualKind::torus_a2: {
            const ARDesc* d = level_ring(p, a, from);
            return pack2(ar_code(ar_norm(ar_from_code(d, hi32(x)), to)),
                         ar_code(ar_norm(ar_from_code(d, lo32(x)), to)));
        }
    }
    return 0;
}

// exponent of zeta_{root_order(m)} at x for the character with exponent
// vector e against the level basis
long chi_exp(const LevelSystem* s, int m, const std::vector<long>& e, std::uint64_t x) {
    const std::vector<long>& logs = s->dlog(m, x);
    const std::vector<long>& orders = s->basis_orders(m);
    const long big_l = s->root_order(m);
    long t = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        long term = (e[i] % orders[i]) * logs[i] % orders[i];
        t = (t + term * (big_l / orders[i])) % big_l;
    }
    return t;
}

// the exponent k with zeta_d^k = zeta_{from_l}^t; exists because the
// evaluated character value is a d-th root of unity
long match_root(long t, long from_l, long d) {
    require((t * d) % from_l == 0, ErrorKind::Internal,
            "character value is not a root of unity of the expected order");
    return (t * d / from_l) % d;
}

bool trivial_on_kernel(const LevelSystem* s, int level, int divisor, const std::vector<long>& e) {
    for (std::uint64_t x : s->norm_kernel(level, divisor))
        if (chi_exp(s, level, e, x) != 0) return false;
    return true;
}

std::vector<long> descend_exponents(const LevelSystem* s, int from, int to,
                                    const std::vector<long>& e) {
    const std::vector<long>& orders_to = s->basis_orders(to);
    const long big_l = s->root_order(from);
    std::vector<long> out(orders_to.size());
    for (std::size_t j = 0; j < orders_to.size(); ++j) {
        std::uint64_t x = s->norm_preimage_of_basis(from, to, j);
        out[j] = match_root(chi_exp(s, from, e, x), big_l, orders_to[j]);
    }
    return out;
}

// exponent vector at `to` of the lift psi o N_{to -> from}
std::vector<long> lift_exponents(const LevelSystem* s, const DualElt& d, int to) {
    const std::vector<std::uint64_t>& gens = s->basis(to);
    const std::vector<long>& orders_to = s->basis_orders(to);
    const long big_l = s->root_order(d.level);
    std::vector<long> out(gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) {
        std::uint64_t y = s->norm(to, d.level, gens[j]);
        out[j] = match_root(chi_exp(s, d.level, d.e, y), big_l, orders_to[j]);
    }
    return out;
}

// exponent vector of psi o F at the element's own level
std::vector<long> fstar_exponents(const LevelSystem* s, const DualElt& d) {
    const std::vector<std::uint64_t>& gens = s->basis(d.level);
    const std::vector<long>& orders = s->basis_orders(d.level);
    const long big_l = s->root_order(d.level);
    std::vector<long> out(gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) {
        std::uint64_t y = s->frob(d.level, gens[j]);
        out[j] = match_root(chi_exp(s, d.level, d.e, y), big_l, orders[j]);
    }
    return out;
}

void check_same_system(const DualElt& d1, const DualElt& d2) {
    require(d1.system != nullptr && d1.system == d2.system, ErrorKind::InvalidArgument,
            "dual elements belong to different systems");
}

} // namespace

const char* dual_kind_name(DualKind k) {
    switch (k) {
        case DualKind::k_add: return "kadd";
        case DualKind::k_mul: return "kmul";
        case DualKind::k_add2: return "kadd2";
        case DualKind::a2_units: return "a2units";
        case DualKind::torus_a2: return "torus";
    }
    return "?";
}

const LevelSystem* LevelSystem::get(DualKind kind, int p, int a, int bound) {
    const Config& cfg = Config::global();
    require(p >= 2 && a >= 1, ErrorKind::InvalidArgument,
            "base field parameters must be positive");
    require(bound >= 1, ErrorKind::InvalidLevel, "level bound must be at least 1");
    require(static_cast<std::uint64_t>(bound) <= cfg.max_dual_level,
            ErrorKind::LevelBoundExceeded, "level bound exceeds the configured maximum");

    static std::mutex mu;
    static std::map<std::tuple<int, int, int, int>, std::unique_ptr<LevelSystem>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(static_cast<int>(kind), p, a, bound);
    auto it = registry.find(key);
    if (it == registry.end()) {
        std::unique_ptr<LevelSystem> s(new LevelSystem());
        s->kind = kind;
        s->p = p;
        s->a = a;
        s->bound = bound;
        s->build();
        it = registry.emplace(key, std::move(s)).first;
    }
    return it->second.get();
}

bool LevelSystem::has_level(int m) const { return levels_data_.count(m) > 0; }

void LevelSystem::require_level(int m) const {
    if (!has_level(m)) {
        std::ostringstream os;
        os << "level " << m << " is not materialized in this system (bound " << bound
           << ", size limits apply)";
        fail(ErrorKind::InvalidLevel, os.str());
    }
}

const LevelSystem::LevelData& LevelSystem::data(int m) const {
    require_level(m);
    return levels_data_.at(m);
}

long LevelSystem::order(int m) const { return static_cast<long>(data(m).elements.size()); }

const std::vector<std::uint64_t>& LevelSystem::elements(int m) const { return data(m).elements; }

std::uint64_t LevelSystem::id(int m) const {
    require_level(m);
    return raw_id(kind, p, a, m);
}

std::uint64_t LevelSystem::op(int m, std::uint64_t x, std::uint64_t y) const {
    require_level(m);
    return raw_op(kind, p, a, m, x, y);
}

std::uint64_t LevelSystem::frob(int m, std::uint64_t x) const {
    require_level(m);
    return raw_frob(kind, p, a, m, x);
}

std::uint64_t LevelSystem::embed(int from, int to, std::uint64_t x) const {
    require_level(from);
    require_level(to);
    require(to % from == 0, ErrorKind::InvalidLevel, "embedding target must be a multiple level");
    return raw_embed(kind, p, a, from, to, x);
}

std::uint64_t LevelSystem::norm(int from, int to, std::uint64_t x) const {
    require_level(from);
    require_level(to);
    require(from % to == 0, ErrorKind::InvalidLevel, "norm target must be a divisor level");
    return raw_norm(kind, p, a, from, to, x);
}

const std::vector<std::uint64_t>& LevelSystem::basis(int m) const { return data(m).gens; }

const std::vector<long>& LevelSystem::basis_orders(int m) const { return data(m).orders; }

long LevelSystem::root_order(int m) const { return data(m).lcm_order; }

const std::vector<long>& LevelSystem::dlog(int m, std::uint64_t x) const {
    const LevelData& ld = data(m);
    auto it = ld.index.find(x);
    require(it != ld.index.end(), ErrorKind::InvalidArgument,
            "element does not belong to the level group");
    return ld.logs[it->second];
}

std::string LevelSystem::to_string(int m, std::uint64_t x) const {
    require_level(m);
    switch (kind) {
        case DualKind::k_add:
        case DualKind::k_mul: return std::to_string(x);
        case DualKind::k_add2:
            return "(" + std::to_string(hi32(x)) + "," + std::to_string(lo32(x)) + ")";
        case DualKind::a2_units:
            return ar_to_string(ar_from_code(level_ring(p, a, m), x));
        case DualKind::torus_a2: {
            const ARDesc* d = level_ring(p, a, m);
            return "(" + ar_to_string(ar_from_code(d, hi32(x))) + ", " +
                   ar_to_string(ar_from_code(d, lo32(x))) + ")";
        }
    }
    return "?";
}

const std::vector<std::uint64_t>& LevelSystem::norm_kernel(int from, int to) const {
    const LevelData& ld = data(from);
    require_level(to);
    auto it = ld.kernels.find(to);
    require(it != ld.kernels.end(), ErrorKind::InvalidLevel,
            "norm kernel is only stored for proper divisor levels");
    return it->second;
}

std::uint64_t LevelSystem::norm_preimage_of_basis(int from, int to, std::size_t j) const {
    const LevelData& ld = data(from);
    auto it = ld.basis_preimage.find(to);
    require(it != ld.basis_preimage.end(), ErrorKind::InvalidLevel,
            "norm preimages are only stored for proper divisor levels");
    require(j < it->second.size(), ErrorKind::InvalidArgument, "basis index out of range");
    return it->second[j];
}

LevelSystem::LevelData LevelSystem::build_level(int m) const {
    LevelData ld;
    ld.m = m;
    const std::uint64_t q = ipow(p, a);
    const std::uint64_t big_q = ipow(q, m);
    const int am = a * m;

    switch (kind) {
        case DualKind::k_add: {
            gf(p, am);
            for (std::uint64_t c = 0; c < big_q; ++c) ld.elements.push_back(c);
            for (int i = 0; i < am; ++i) {
                ld.gens.push_back(ipow(p, i));
                ld.orders.push_back(p);
            }
            break;
        }
        case DualKind::k_mul: {
            const FqDesc* f = gf(p, am);
            for (std::uint64_t c = 1; c < big_q; ++c) ld.elements.push_back(c);
            if (big_q > 2) {
                ld.gens.push_back(f->gen);
                ld.orders.push_back(static_cast<long>(big_q) - 1);
            }
            break;
        }
        case DualKind::k_add2: {
            gf(p, am);
            for (std::uint64_t x = 0; x < big_q; ++x)
                for (std::uint64_t y = 0; y < big_q; ++y) ld.elements.push_back(pack2(x, y));
            for (int i = 0; i < am; ++i) {
                ld.gens.push_back(pack2(ipow(p, i), 0));
                ld.orders.push_back(p);
            }
            for (int i = 0; i < am; ++i) {
                ld.gens.push_back(pack2(0, ipow(p, i)));
                ld.orders.push_back(p);
            }
            break;
        }
        case DualKind::a2_units:
        case DualKind::torus_a2: {
            const ARDesc* d = level_ring(p, a, m);
            const FqDesc* f = gf(p, am);
            std::vector<std::uint64_t> ucodes;
            for (const ARElem& u : ar_units(d)) ucodes.push_back(ar_code(u));
            std::sort(ucodes.begin(), ucodes.end());
            // basis of the unit group: a multiplicative generator of the
            // constants and 1 + eps*beta over a digit basis beta
            std::vector<std::uint64_t> ugens;
            std::vector<long> uorders;
            if (big_q > 2) {
                ugens.push_back(ar_code(ar_from_coeffs(d, {f->gen, 0})));
                uorders.push_back(static_cast<long>(big_q) - 1);
            }
            for (int i = 0; i < am; ++i) {
                ugens.push_back(ar_code(ar_from_coeffs(d, {1, static_cast<std::uint32_t>(ipow(p, i))})));
                uorders.push_back(p);
            }
            if (kind == DualKind::a2_units) {
                ld.elements = std::move(ucodes);
                ld.gens = std::move(ugens);
                ld.orders = std::move(uorders);
            } else {
                std::uint64_t one = ar_code(ar_one(d));
                for (std::uint64_t x : ucodes)
                    for (std::uint64_t y : ucodes) ld.elements.push_back(pack2(x, y));
                for (std::size_t i = 0; i < ugens.size(); ++i) {
                    ld.gens.push_back(pack2(ugens[i], one));
                    ld.orders.push_back(uorders[i]);
                }
                for (std::size_t i = 0; i < ugens.size(); ++i) {
                    ld.gens.push_back(pack2(one, ugens[i]));
                    ld.orders.push_back(uorders[i]);
                }
            }
            break;
        }
    }

    ld.index.reserve(ld.elements.size());
    for (std::size_t i = 0; i < ld.elements.size(); ++i)
        ld.index.emplace(ld.elements[i], static_cast<std::uint32_t>(i));

    // walk the exponent odometer; the walk covering the group exactly
    // once is the direct-product certificate for the basis
    ld.logs.assign(ld.elements.size(), {});
    std::vector<char> seen(ld.elements.size(), 0);
    std::vector<long> tuple(ld.gens.size(), 0);
    std::function<void(std::size_t, std::uint64_t)> walk = [&](std::size_t i, std::uint64_t acc) {
        if (i == ld.gens.size()) {
            auto it = ld.index.find(acc);
            require(it != ld.index.end(), ErrorKind::Internal,
                    "generated element escapes the level group");
            require(!seen[it->second], ErrorKind::Internal, "level basis is not independent");
            seen[it->second] = 1;
            ld.logs[it->second] = tuple;
            return;
        }
        std::uint64_t cur = acc;
        for (long k = 0; k < ld.orders[i]; ++k) {
            tuple[i] = k;
            walk(i + 1, cur);
            cur = raw_op(kind, p, a, m, cur, ld.gens[i]);
        }
        tuple[i] = 0;
    };
    walk(0, raw_id(kind, p, a, m));
    for (char s : seen)
        require(s, ErrorKind::Internal, "level basis does not generate the group");

    ld.lcm_order = 1;
    for (long d : ld.orders) ld.lcm_order = std::lcm(ld.lcm_order, d);
    return ld;
}

void LevelSystem::build() {
    const Config& cfg = Config::global();
    const std::uint64_t q = ipow(p, a);
    require(q <= cfg.max_field_size, ErrorKind::ResourceLimit,
            "base field exceeds the configured size limit");
    gf(p, a); // validates the characteristic

    for (int m = 1; m <= bound; ++m) {
        if (bound % m != 0) continue;
        std::uint64_t big_q = ipow(q, m);
        if (big_q > cfg.max_field_size) continue;
        std::uint64_t n = group_order_formula(kind, big_q);
        if (n > cfg.max_group_order) continue;
        levels_data_.emplace(m, build_level(m));
        levels_.push_back(m);
    }
    require(!levels_.empty() && levels_.front() == 1, ErrorKind::ResourceLimit,
            "the base level does not fit the configured group size limit");

    // relative norms: kernels, basis preimages, and the exhaustive
    // surjectivity check
    for (int m : levels_) {
        LevelData& up = levels_data_.at(m);
        for (int d : levels_) {
            if (d >= m || m % d != 0) continue;
            const LevelData& down = levels_data_.at(d);
            std::vector<char> hit(down.elements.size(), 0);
            std::vector<std::uint64_t>& kernel = up.kernels[d];
            std::vector<std::uint64_t>& pre = up.basis_preimage[d];
            pre.assign(down.gens.size(), kTooBig);
            const std::uint64_t down_id = raw_id(kind, p, a, d);
            for (std::uint64_t x : up.elements) {
                std::uint64_t y = raw_norm(kind, p, a, m, d, x);
                auto it = down.index.find(y);
                require(it != down.index.end(), ErrorKind::Internal,
                        "norm image escapes the divisor level");
                hit[it->second] = 1;
                if (y == down_id) kernel.push_back(x);
                for (std::size_t j = 0; j < down.gens.size(); ++j)
                    if (pre[j] == kTooBig && y == down.gens[j]) pre[j] = x;
            }
            for (char h : hit)
                require(h, ErrorKind::Internal, "relative norm is not surjective");
            for (std::uint64_t v : pre)
                require(v != kTooBig, ErrorKind::Internal, "basis preimage missing");
        }
    }
}

DualElt dual_unit(const LevelSystem* s) {
    require(s != nullptr, ErrorKind::InvalidArgument, "null system");
    return {s, 1, std::vector<long>(s->basis_orders(1).size(), 0)};
}

DualElt canonicalize(const LevelSystem* s, int level, std::vector<long> e) {
    require(s != nullptr, ErrorKind::InvalidArgument, "null system");
    s->require_level(level);
    const std::vector<long>* orders = &s->basis_orders(level);
    require(e.size() == orders->size(), ErrorKind::InvalidArgument,
            "exponent vector length does not match the level basis");
    for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] %= (*orders)[i];
        if (e[i] < 0) e[i] += (*orders)[i];
    }
    bool moved = true;
    while (moved) {
        moved = false;
        for (int d : s->levels()) {
            if (d >= level || level % d != 0) continue;
            if (!trivial_on_kernel(s, level, d, e)) continue;
            e = descend_exponents(s, level, d, e);
            level = d;
            moved = true;
            break;
        }
    }
    return {s, level, std::move(e)};
}

std::vector<Cyc> char_fn(const DualElt& d, int eval_level) {
    require(d.system != nullptr, ErrorKind::InvalidArgument, "null system");
    const LevelSystem* s = d.system;
    s->require_level(eval_level);
    s->require_level(d.level);
    require(eval_level % d.level == 0, ErrorKind::InvalidLevel,
            "the element's level must divide the evaluation level");
    const long big_l = s->root_order(d.level);
    std::vector<Cyc> out;
    out.reserve(s->elements(eval_level).size());
    for (std::uint64_t x : s->elements(eval_level)) {
        std::uint64_t y = s->norm(eval_level, d.level, x);
        out.push_back(Cyc::root(big_l, chi_exp(s, d.level, d.e, y)));
    }
    return out;
}

Cyc char_fn_at(const DualElt& d, int eval_level, std::uint64_t x) {
    require(d.system != nullptr, ErrorKind::InvalidArgument, "null system");
    const LevelSystem* s = d.system;
    require(eval_level % d.level == 0, ErrorKind::InvalidLevel,
            "the element's level must divide the evaluation level");
    std::uint64_t y = s->norm(eval_level, d.level, x);
    return Cyc::root(s->root_order(d.level), chi_exp(s, d.level, d.e, y));
}

DualElt dual_mul(const DualElt& d1, const DualElt& d2) {
    check_same_system(d1, d2);
    const LevelSystem* s = d1.system;
    long l = std::lcm(static_cast<long>(d1.level), static_cast<long>(d2.level));
    if (l > s->bound || !s->has_level(static_cast<int>(l))) {
        std::ostringstream os;
        os << "the product lives at level " << l << ", which is not materialized in this system (bound "
           << s->bound << ", size limits apply)";
        fail(ErrorKind::LevelBoundExceeded, os.str());
    }
    int common = static_cast<int>(l);
    std::vector<long> e1 = lift_exponents(s, d1, common);
    std::vector<long> e2 = lift_exponents(s, d2, common);
    const std::vector<long>& orders = s->basis_orders(common);
    for (std::size_t i = 0; i < e1.size(); ++i) e1[i] = (e1[i] + e2[i]) % orders[i];
    return canonicalize(s, common, std::move(e1));
}

DualElt dual_fstar(const DualElt& d) {
    require(d.system != nullptr, ErrorKind::InvalidArgument, "null system");
    return canonicalize(d.system, d.level, fstar_exponents(d.system, d));
}

DualElt dual_inv(const DualElt& d) {
    require(d.system != nullptr, ErrorKind::InvalidArgument, "null system");
    const std::vector<long>& orders = d.system->basis_orders(d.level);
    // trivial on a norm kernel iff the inverse is, so canonicality survives
    std::vector<long> e(orders.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = (orders[i] - d.e[i]) % orders[i];
    return {d.system, d.level, std::move(e)};
}

std::vector<DualElt> canonical_at_level(const LevelSystem* s, int m) {
    require(s != nullptr, ErrorKind::InvalidArgument, "null system");
    s->require_level(m);
    const std::vector<long>& orders = s->basis_orders(m);
    std::vector<int> proper;
    for (int d : s->levels())
        if (d < m && m % d == 0) proper.push_back(d);

    std::vector<DualElt> out;
    std::vector<long> e(orders.size(), 0);
    bool done = false;
    while (!done) {
        bool canonical = true;
        for (int d : proper)
            if (trivial_on_kernel(s, m, d, e)) {
                canonical = false;
                break;
            }
        if (canonical) out.push_back({s, m, e});
        // lexicographic odometer, rightmost digit fastest
        done = true;
        for (std::size_t i = orders.size(); i-- > 0;) {
            if (++e[i] < orders[i]) {
                done = false;
                break;
            }
            e[i] = 0;
        }
        if (orders.empty()) break;
    }
    return out;
}

std::vector<DualElt> dual_fixed_points(const LevelSystem* s) {
    require(s != nullptr, ErrorKind::InvalidArgument, "null system");
    std::vector<DualElt> out;
    for (int m : s->levels()) {
        const std::vector<long>& orders = s->basis_orders(m);
        std::vector<int> proper;
        for (int d : s->levels())
            if (d < m && m % d == 0) proper.push_back(d);

        std::vector<long> e(orders.size(), 0);
        bool done = false;
        while (!done) {
            DualElt cand{s, m, e};
            // cheap filter first: fixed under psi -> psi o F
            if (fstar_exponents(s, cand) == e) {
                bool canonical = true;
                for (int d : proper)
                    if (trivial_on_kernel(s, m, d, e)) {
                        canonical = false;
                        break;
                    }
                if (canonical) out.push_back(std::move(cand));
            }
            done = true;
            for (std::size_t i = orders.size(); i-- > 0;) {
                if (++e[i] < orders[i]) {
                    done = false;
                    break;
                }
                e[i] = 0;
            }
            if (orders.empty()) break;
        }
    }
    return out;
}

bool tensor_check(const DualElt& d1, const DualElt& d2, int level) {
    check_same_system(d1, d2);
    const LevelSystem* s = d1.system;
    s->require_level(level);
    DualElt prod = dual_mul(d1, d2);
    require(level % d1.level == 0 && level % d2.level == 0 && level % prod.level == 0,
            ErrorKind::InvalidLevel, "both factor levels must divide the evaluation level");
    // every value is a root of unity, so the pointwise identity
    // char_fn(prod) == char_fn(d1) * char_fn(d2) holds exactly when the
    // exponents agree at the common order; this stays exact while
    // avoiding dense cyclotomic products at large orders
    const long l1 = s->root_order(d1.level);
    const long l2 = s->root_order(d2.level);
    const long lp = s->root_order(prod.level);
    const long big_l = std::lcm(std::lcm(l1, l2), lp);
    for (std::uint64_t x : s->elements(level)) {
        long e1 = chi_exp(s, d1.level, d1.e, s->norm(level, d1.level, x));
        long e2 = chi_exp(s, d2.level, d2.e, s->norm(level, d2.level, x));
        long ep = chi_exp(s, prod.level, prod.e, s->norm(level, prod.level, x));
        if (ep * (big_l / lp) % big_l != (e1 * (big_l / l1) + e2 * (big_l / l2)) % big_l)
            return false;
    }
    return true;
}

nlohmann::json dual_to_json(const DualElt& d) {
    require(d.system != nullptr, ErrorKind::InvalidArgument, "null system");
    return {{"system", dual_kind_name(d.system->kind)},
            {"p", d.system->p},
            {"a", d.system->a},
            {"bound", d.system->bound},
            {"level", d.level},
            {"exponents", d.e}};
}

namespace {

// a short deterministic sample: first, last, and two interior elements
std::vector<DualElt> spread_sample(const std::vector<DualElt>& v, std::size_t want) {
    std::vector<DualElt> out;
    if (v.empty()) return out;
    std::set<std::size_t> idx = {0, v.size() - 1};
    if (want > 2 && v.size() > 2) {
        idx.insert(v.size() / 3);
        idx.insert(2 * v.size() / 3);
    }
    for (std::size_t i : idx) {
        out.push_back(v[i]);
        if (out.size() >= want) break;
    }
    return out;
}

} // namespace

VerificationReport dual_verify(int p, int a, int bound) {
    VerificationReport rep;
    rep.suite = "dual";
    rep.params = {{"p", p}, {"a", a}, {"bound", bound}};

    const DualKind kinds[] = {DualKind::k_add, DualKind::k_mul, DualKind::a2_units};
    nlohmann::json level_lists = nlohmann::json::object();

    for (DualKind kind : kinds) {
        const LevelSystem* s = LevelSystem::get(kind, p, a, bound);
        const std::string kn = dual_kind_name(kind);
        level_lists[kn] = s->levels();

        rep.add_timed(kn + ": norms surject with equal fibers on every level pair", [&] {
            for (int from : s->levels())
                for (int to : s->levels()) {
                    if (to >= from || from % to != 0) continue;
                    std::unordered_map<std::uint64_t, long> hits;
                    for (std::uint64_t x : s->elements(from)) ++hits[s->norm(from, to, x)];
                    const long expect = s->order(from) / s->order(to);
                    for (std::uint64_t y : s->elements(to)) {
                        auto it = hits.find(y);
                        if (it == hits.end() || it->second != expect) {
                            std::ostringstream os;
                            os << "N_{" << from << "->" << to << "} covers "
                               << s->to_string(to, y) << " "
                               << (it == hits.end() ? 0L : it->second) << " times, expected "
                               << expect;
                            return std::pair(false, os.str());
                        }
                    }
                }
            return std::pair(true, std::string());
        });

        // dlog(x b_j) = dlog(x) + e_j for every x and basis element; by
        // induction over exponent vectors this makes every character
        // with respect to the basis multiplicative on the whole level
        rep.add_timed(kn + ": discrete logs are additive, characters multiplicative", [&] {
            for (int m : s->levels()) {
                const std::vector<std::uint64_t>& basis = s->basis(m);
                const std::vector<long>& orders = s->basis_orders(m);
                for (std::uint64_t x : s->elements(m)) {
                    const std::vector<long> lx = s->dlog(m, x);
                    for (std::size_t j = 0; j < basis.size(); ++j) {
                        const std::vector<long>& ly = s->dlog(m, s->op(m, x, basis[j]));
                        for (std::size_t i = 0; i < orders.size(); ++i) {
                            long want = (lx[i] + (i == j ? 1 : 0)) % orders[i];
                            if (ly[i] != want) {
                                std::ostringstream os;
                                os << "level " << m << ": log of " << s->to_string(m, x)
                                   << " * basis[" << j << "] is off in coordinate " << i;
                                return std::pair(false, os.str());
                            }
                        }
                    }
                }
            }
            return std::pair(true, std::string());
        });

        // at each level m the pullbacks of all canonical elements of all
        // divisor levels are pairwise distinct (checked on the basis, which
        // suffices once characters are multiplicative) and exhaust the dual
        rep.add_timed(kn + ": canonical elements separate and exhaust each level's dual", [&] {
            for (int m : s->levels()) {
                const long big_l = s->root_order(m);
                std::set<std::vector<long>> keys;
                long total = 0;
                for (int d : s->levels()) {
                    if (m % d != 0) continue;
                    if (s->root_order(d) == 0 || big_l % s->root_order(d) != 0) {
                        std::ostringstream os;
                        os << "root order at level " << d << " does not divide level " << m;
                        return std::pair(false, os.str());
                    }
                    const long scale = big_l / std::max(1L, s->root_order(d));
                    for (const DualElt& el : canonical_at_level(s, d)) {
                        std::vector<long> key;
                        key.reserve(s->basis(m).size());
                        for (std::uint64_t b : s->basis(m)) {
                            std::uint64_t y = s->norm(m, d, b);
                            key.push_back(scale * chi_exp(s, d, el.e, y) % std::max(1L, big_l));
                        }
                        keys.insert(std::move(key));
                        ++total;
                    }
                }
                if (static_cast<long>(keys.size()) != total || total != s->order(m)) {
                    std::ostringstream os;
                    os << "level " << m << ": " << keys.size() << " distinct systems from "
                       << total << " canonical elements, dual has " << s->order(m);
                    return std::pair(false, os.str());
                }
            }
            return std::pair(true, std::string());
        });

        rep.add_timed(kn + ": the base dual is the dual-Frobenius fixed part", [&] {
            std::vector<DualElt> base = canonical_at_level(s, 1);
            std::vector<DualElt> fixed = dual_fixed_points(s);
            if (base != fixed) {
                std::ostringstream os;
                os << "fixed census " << fixed.size() << " vs base dual " << base.size();
                return std::pair(false, os.str());
            }
            const std::vector<long>& orders = s->basis_orders(1);
            for (const DualElt& d : base)
                if (dual_fstar(d) != d)
                    return std::pair(false, std::string("base element moved by the dual Frobenius"));
            for (std::size_t i = 0; i < base.size(); ++i)
                for (std::size_t j = 0; j < base.size(); ++j) {
                    std::vector<long> e(orders.size());
                    for (std::size_t k = 0; k < e.size(); ++k)
                        e[k] = (base[i].e[k] + base[j].e[k]) % orders[k];
                    if (dual_mul(base[i], base[j]) != DualElt{s, 1, e}) {
                        std::ostringstream os;
                        os << "product of base elements " << i << ", " << j
                           << " is not the exponent sum";
                        return std::pair(false, os.str());
                    }
                }
            return std::pair(true, std::string());
        });

        rep.add_timed(kn + ": tensor products multiply characteristic functions", [&] {
            std::vector<DualElt> base = canonical_at_level(s, 1);
            for (int m : s->levels()) {
                std::vector<DualElt> pool = spread_sample(
                    canonical_at_level(s, m), s->order(m) <= 512 ? 4 : 2);
                for (const DualElt& d : spread_sample(base, 2)) pool.push_back(d);
                for (const DualElt& d1 : pool)
                    for (const DualElt& d2 : pool)
                        if (!tensor_check(d1, d2, m)) {
                            std::ostringstream os;
                            os << "level " << m << ": " << dual_to_json(d1).dump() << " x "
                               << dual_to_json(d2).dump();
                            return std::pair(false, os.str());
                        }
            }
            return std::pair(true, std::string());
        });

        // ties the exponent layer to exact cyclotomic arithmetic where
        // dense products stay affordable
        rep.add_timed(kn + ": values multiply as exact cyclotomic numbers at small levels", [&] {
            std::vector<DualElt> base = canonical_at_level(s, 1);
            for (int m : s->levels()) {
                if (s->root_order(m) > 200 || s->order(m) > 512) continue;
                std::vector<DualElt> pool = spread_sample(canonical_at_level(s, m), 2);
                for (const DualElt& d : spread_sample(base, 2)) pool.push_back(d);
                for (const DualElt& d1 : pool)
                    for (const DualElt& d2 : pool) {
                        std::vector<Cyc> f = char_fn(dual_mul(d1, d2), m);
                        std::vector<Cyc> f1 = char_fn(d1, m);
                        std::vector<Cyc> f2 = char_fn(d2, m);
                        for (std::size_t i = 0; i < f.size(); ++i)
                            if (f[i] != f1[i] * f2[i]) {
                                std::ostringstream os;
                                os << "level " << m << " element index " << i << ": "
                                   << dual_to_json(d1).dump() << " x " << dual_to_json(d2).dump();
                                return std::pair(false, os.str());
                            }
                    }
            }
            return std::pair(true, std::string());
        });
    }

    rep.params["levels"] = level_lists;
    return rep;
}

} // namespace charfn
