#include "charfn/fingroup.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

#include "charfn/config.hpp"
#include "charfn/error.hpp"

namespace charfn {

namespace {
constexpr long kMaxRingTable = 1024;    // coefficient tables are size^2
constexpr long kExhaustiveCap = 10000;  // full closure check below this
} // namespace

CoeffRing CoeffRing::from_field(const FqDesc* f) {
    require(f->q <= kMaxRingTable, ErrorKind::ResourceLimit,
            "coefficient field too large for ring tables");
    CoeffRing r;
    r.field = f;
    r.size_ = f->q;
    long q = f->q;
    r.add_.resize(static_cast<std::size_t>(q) * q);
    r.mul_.resize(static_cast<std::size_t>(q) * q);
    r.neg_.resize(q);
    r.inv_.resize(q);
    r.frob_.resize(q);
    for (long x = 0; x < q; ++x) {
        auto ux = static_cast<std::uint32_t>(x);
        r.neg_[x] = f->neg(ux);
        r.inv_[x] = x == 0 ? -1 : static_cast<std::int32_t>(f->inv(ux));
        r.frob_[x] = ux; // x^q is the identity on F_q
        for (long y = 0; y < q; ++y) {
            r.add_[r.idx(ux, y)] = f->add(ux, static_cast<std::uint32_t>(y));
            r.mul_[r.idx(ux, y)] = f->mul(ux, static_cast<std::uint32_t>(y));
        }
    }
    r.print_ = [f](std::uint32_t x) { return f->to_string(x); };
    return r;
}

CoeffRing CoeffRing::from_ar(const ARDesc* d) {
    require(d->size() <= static_cast<std::uint64_t>(kMaxRingTable), ErrorKind::ResourceLimit,
            "truncated ring too large for ring tables");
    CoeffRing r;
    r.ar = d;
    long s = static_cast<long>(d->size());
    r.size_ = s;
    r.add_.resize(static_cast<std::size_t>(s) * s);
    r.mul_.resize(static_cast<std::size_t>(s) * s);
    r.neg_.resize(s);
    r.inv_.resize(s);
    r.frob_.resize(s);
    std::vector<ARElem> elems;
    elems.reserve(s);
    for (long x = 0; x < s; ++x) elems.push_back(ar_from_code(d, static_cast<std::uint64_t>(x)));
    for (long x = 0; x < s; ++x) {
        r.neg_[x] = static_cast<std::uint32_t>(ar_code(ar_neg(elems[x])));
        r.inv_[x] = ar_is_unit(elems[x])
                        ? static_cast<std::int32_t>(ar_code(ar_inv(elems[x])))
                        : -1;
        r.frob_[x] = static_cast<std::uint32_t>(ar_code(ar_frobq(elems[x])));
        for (long y = 0; y < s; ++y) {
            r.add_[r.idx(x, y)] = static_cast<std::uint32_t>(ar_code(ar_add(elems[x], elems[y])));
            r.mul_[r.idx(x, y)] = static_cast<std::uint32_t>(ar_code(ar_mul(elems[x], elems[y])));
        }
    }
    r.print_ = [d](std::uint32_t x) { return ar_to_string(ar_from_code(d, x)); };
    return r;
}

std::uint32_t CoeffRing::inv(std::uint32_t x) const {
    require(inv_[x] >= 0, ErrorKind::NotAUnit, "inverse of a non-unit ring element");
    return static_cast<std::uint32_t>(inv_[x]);
}

const char* group_kind_name(GroupKind k) {
    switch (k) {
        case GroupKind::heisenberg: return "heisenberg";
        case GroupKind::u4: return "u4";
        case GroupKind::axb: return "axb";
        case GroupKind::gl2ar: return "gl2ar";
        case GroupKind::subgroup: return "subgroup";
    }
    return "?";
}

// --- element codes -------------------------------------------------------

std::uint64_t Group::pack(const std::vector<std::uint32_t>& entries) const {
    std::uint64_t code = 0;
    auto R = static_cast<std::uint64_t>(ring.size());
    for (int i = 0; i < n * n; ++i) code = code * R + entries[static_cast<std::size_t>(i)];
    return code;
}

std::vector<std::uint32_t> Group::unpack(std::uint64_t g) const {
    std::vector<std::uint32_t> entries(static_cast<std::size_t>(n) * n);
    auto R = static_cast<std::uint64_t>(ring.size());
    for (int i = n * n - 1; i >= 0; --i) {
        entries[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(g % R);
        g /= R;
    }
    return entries;
}

std::uint32_t Group::entry(std::uint64_t g, int i, int j) const {
    auto R = static_cast<std::uint64_t>(ring.size());
    int drop = n * n - 1 - (i * n + j);
    for (int k = 0; k < drop; ++k) g /= R;
    return static_cast<std::uint32_t>(g % R);
}

std::uint64_t Group::from_entries(const std::vector<std::uint32_t>& entries) const {
    require(entries.size() == static_cast<std::size_t>(n) * n, ErrorKind::InvalidArgument,
            "entry list has the wrong length");
    for (std::uint32_t e : entries)
        require(e < static_cast<std::uint32_t>(ring.size()), ErrorKind::InvalidArgument,
                "matrix entry out of range");
    std::uint64_t code = pack(entries);
    require(contains(code), ErrorKind::InvalidArgument,
            "matrix does not lie in the group");
    return code;
}

std::uint32_t Group::index_of(std::uint64_t g) const {
    auto it = index_.find(g);
    require(it != index_.end(), ErrorKind::InvalidArgument, "element is not in the group");
    return it->second;
}

// --- group law -------------------------------------------------------------

namespace {
using Mat = std::array<std::uint32_t, 16>;

void unpack_into(const Group& G, std::uint64_t g, Mat& out) {
    auto R = static_cast<std::uint64_t>(G.ring.size());
    int nn = G.n * G.n;
    for (int i = nn - 1; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(g % R);
        g /= R;
    }
}

std::uint64_t pack_from(const Group& G, const Mat& m) {
    std::uint64_t code = 0;
    auto R = static_cast<std::uint64_t>(G.ring.size());
    int nn = G.n * G.n;
    for (int i = 0; i < nn; ++i) code = code * R + m[static_cast<std::size_t>(i)];
    return code;
}

void matmul(const Group& G, const Mat& a, const Mat& b, Mat& out) {
    int n = G.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::uint32_t acc = 0;
            for (int k = 0; k < n; ++k)
                acc = G.ring.add(acc, G.ring.mul(a[static_cast<std::size_t>(i * n + k)],
                                                 b[static_cast<std::size_t>(k * n + j)]));
            out[static_cast<std::size_t>(i * n + j)] = acc;
        }
}
} // namespace

std::uint64_t Group::mul(std::uint64_t g, std::uint64_t h) const {
    Mat a{}, b{}, c{};
    unpack_into(*this, g, a);
    unpack_into(*this, h, b);
    matmul(*this, a, b, c);
    return pack_from(*this, c);
}

std::uint64_t Group::pow(std::uint64_t g, long e) const {
    if (e < 0) return pow(inv(g), -e);
    std::uint64_t acc = id_, base = g;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

std::uint64_t Group::inv(std::uint64_t g) const {
    // g^{|G|-1}: Lagrange makes this the inverse in any finite group
    return pow(g, order() - 1);
}

std::uint64_t Group::conj(std::uint64_t h, std::uint64_t g) const {
    return mul(mul(h, g), inv(h));
}

std::uint64_t Group::frobq(std::uint64_t g, int times) const {
    Mat a{};
    unpack_into(*this, g, a);
    for (int t = 0; t < times; ++t)
        for (int i = 0; i < n * n; ++i)
            a[static_cast<std::size_t>(i)] = ring.frobq(a[static_cast<std::size_t>(i)]);
    return pack_from(*this, a);
}

// --- coordinate views -------------------------------------------------------

std::vector<std::uint32_t> Group::coords(std::uint64_t g) const {
    switch (coord_kind_) {
        case GroupKind::heisenberg:
            return {entry(g, 0, 1), entry(g, 0, 2), entry(g, 1, 2)};
        case GroupKind::u4:
            return {entry(g, 0, 1), entry(g, 0, 2), entry(g, 0, 3), entry(g, 1, 2)};
        case GroupKind::axb:
            return {entry(g, 0, 0), entry(g, 0, 1)};
        default:
            return {entry(g, 0, 0), entry(g, 0, 1), entry(g, 1, 0), entry(g, 1, 1)};
    }
}

std::uint64_t Group::from_coords(const std::vector<std::uint32_t>& t) const {
    switch (coord_kind_) {
        case GroupKind::heisenberg: {
            require(t.size() == 3, ErrorKind::InvalidArgument, "expected [a,b,c]");
            return from_entries({1, t[0], t[1], 0, 1, t[2], 0, 0, 1});
        }
        case GroupKind::u4: {
            require(t.size() == 4, ErrorKind::InvalidArgument, "expected [a,b,c,d]");
            std::uint32_t a = t[0], b = t[1], c = t[2], d = t[3];
            std::uint32_t bad = ring.add(b, ring.mul(a, d));
            return from_entries({1, a, b, c, 0, 1, d, bad, 0, 0, 1, a, 0, 0, 0, 1});
        }
        case GroupKind::axb: {
            require(t.size() == 2, ErrorKind::InvalidArgument, "expected [a,b]");
            return from_entries({t[0], t[1], 0, 1});
        }
        default: {
            require(t.size() == 4, ErrorKind::InvalidArgument, "expected four ring entries");
            return from_entries({t[0], t[1], t[2], t[3]});
        }
    }
}

std::string Group::to_string(std::uint64_t g) const {
    std::string out = "[";
    auto t = coords(g);
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ",";
        out += ring.to_string(t[i]);
    }
    return out + "]";
}

// --- construction ------------------------------------------------------------

void Group::finish(std::vector<std::uint64_t> elems) {
    require(!elems.empty(), ErrorKind::Internal, "empty element list");
    std::sort(elems.begin(), elems.end());
    require(std::adjacent_find(elems.begin(), elems.end()) == elems.end(), ErrorKind::Internal,
            "duplicate elements in enumeration");
    require(elems.size() <= Config::global().max_group_order, ErrorKind::ResourceLimit,
            "group order exceeds the configured bound");
    elements_ = std::move(elems);
    index_.reserve(elements_.size() * 2);
    for (std::size_t i = 0; i < elements_.size(); ++i)
        index_.emplace(elements_[i], static_cast<std::uint32_t>(i));

    std::vector<std::uint32_t> ident(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) ident[static_cast<std::size_t>(i * n + i)] = 1;
    id_ = pack(ident);
    require(contains(id_), ErrorKind::Internal, "identity missing from enumeration");

    long N = order();
    if (N <= kExhaustiveCap) {
        for (std::uint64_t g : elements_) {
            for (std::uint64_t h : elements_)
                require(contains(mul(g, h)), ErrorKind::Internal,
                        "enumeration not closed under multiplication");
            std::uint64_t gi = inv(g);
            require(contains(gi) && mul(g, gi) == id_, ErrorKind::Internal,
                    "enumeration not closed under inverse");
        }
    } else {
        // deterministic spot check
        for (long i = 0; i < 20000; ++i) {
            std::uint64_t g = elements_[static_cast<std::size_t>((i * 2654435761u + 7) % N)];
            std::uint64_t h = elements_[static_cast<std::size_t>((i * 40503u + 11) % N)];
            require(contains(mul(g, h)), ErrorKind::Internal,
                    "enumeration not closed under multiplication");
            if (i % 16 == 0) {
                std::uint64_t gi = inv(g);
                require(contains(gi) && mul(g, gi) == id_, ErrorKind::Internal,
                        "enumeration not closed under inverse");
            }
        }
    }
}

namespace {
std::uint64_t checked_pow_order(std::uint64_t base, int e) {
    std::uint64_t out = 1;
    for (int i = 0; i < e; ++i) {
        require(out <= Config::global().max_group_order, ErrorKind::ResourceLimit,
                "group order exceeds the configured bound");
        out *= base;
    }
    return out;
}
} // namespace

GroupPtr make_heisenberg(const FqDesc* f) {
    require(f->p != 2, ErrorKind::UnsupportedCharacteristic,
            "the [a,b,c] group needs 2 to be invertible in the field");
    auto q = static_cast<std::uint64_t>(f->q);
    require(checked_pow_order(q, 3) <= Config::global().max_group_order,
            ErrorKind::ResourceLimit, "group order exceeds the configured bound");
    auto g = std::shared_ptr<Group>(new Group());
    g->kind = g->coord_kind_ = GroupKind::heisenberg;
    g->n = 3;
    g->ring = CoeffRing::from_field(f);
    g->params = {{"p", f->p}, {"a", f->a}, {"q", f->q}};
    std::vector<std::uint64_t> elems;
    elems.reserve(q * q * q);
    for (std::uint32_t a = 0; a < f->q; ++a)
        for (std::uint32_t b = 0; b < f->q; ++b)
            for (std::uint32_t c = 0; c < f->q; ++c)
                elems.push_back(g->pack({1, a, b, 0, 1, c, 0, 0, 1}));
    g->finish(std::move(elems));
    return g;
}

GroupPtr make_u4(const FqDesc* f) {
    require(f->p == 2, ErrorKind::UnsupportedCharacteristic,
            "the [a,b,c,d] group is defined in characteristic 2");
    auto q = static_cast<std::uint64_t>(f->q);
    require(checked_pow_order(q, 4) <= Config::global().max_group_order,
            ErrorKind::ResourceLimit, "group order exceeds the configured bound");
    auto g = std::shared_ptr<Group>(new Group());
    g->kind = g->coord_kind_ = GroupKind::u4;
    g->n = 4;
    g->ring = CoeffRing::from_field(f);
    g->params = {{"p", f->p}, {"a", f->a}, {"q", f->q}};
    std::vector<std::uint64_t> elems;
    elems.reserve(q * q * q * q);
    for (std::uint32_t a = 0; a < f->q; ++a)
        for (std::uint32_t b = 0; b < f->q; ++b)
            for (std::uint32_t c = 0; c < f->q; ++c)
                for (std::uint32_t d = 0; d < f->q; ++d) {
                    std::uint32_t bad = f->add(b, f->mul(a, d));
                    elems.push_back(
                        g->pack({1, a, b, c, 0, 1, d, bad, 0, 0, 1, a, 0, 0, 0, 1}));
                }
    g->finish(std::move(elems));
    return g;
}

GroupPtr make_axb(const FqDesc* f) {
    auto g = std::shared_ptr<Group>(new Group());
    g->kind = g->coord_kind_ = GroupKind::axb;
    g->n = 2;
    g->ring = CoeffRing::from_field(f);
    g->params = {{"p", f->p}, {"a", f->a}, {"q", f->q}};
    std::vector<std::uint64_t> elems;
    for (std::uint32_t a = 1; a < f->q; ++a)
        for (std::uint32_t b = 0; b < f->q; ++b) elems.push_back(g->pack({a, b, 0, 1}));
    g->finish(std::move(elems));
    return g;
}

GroupPtr make_gl2ar(const FqDesc* ground, int m, int r) {
    const ARDesc* d = ar_ring(ground->p, ground->a, m, r);
    std::uint64_t Q = static_cast<std::uint64_t>(d->base->q);
    // |GL_2(A_r)| = Q^{4(r-1)} (Q^2-1)(Q^2-Q); the first factor is already
    // capped by the order bound, so the product fits comfortably in 64 bits
    std::uint64_t expected = checked_pow_order(Q, 4 * (r - 1));
    expected *= (Q * Q - 1) * (Q * Q - Q);
    require(expected <= Config::global().max_group_order, ErrorKind::ResourceLimit,
            "group order exceeds the configured bound");

    auto g = std::shared_ptr<Group>(new Group());
    g->kind = g->coord_kind_ = GroupKind::gl2ar;
    g->n = 2;
    g->ring = CoeffRing::from_ar(d);
    g->params = {{"p", ground->p},
                 {"q", ground->q},
                 {"m", m},
                 {"r", r},
                 {"coeff_ring_size", static_cast<long>(d->size())}};
    long S = g->ring.size();
    std::vector<std::uint64_t> elems;
    elems.reserve(expected);
    for (std::uint32_t x00 = 0; x00 < S; ++x00)
        for (std::uint32_t x01 = 0; x01 < S; ++x01)
            for (std::uint32_t x10 = 0; x10 < S; ++x10)
                for (std::uint32_t x11 = 0; x11 < S; ++x11) {
                    std::uint32_t det = g->ring.sub(g->ring.mul(x00, x11), g->ring.mul(x01, x10));
                    if (g->ring.is_unit(det)) elems.push_back(g->pack({x00, x01, x10, x11}));
                }
    require(elems.size() == expected, ErrorKind::Internal, "unit-determinant count mismatch");
    g->finish(std::move(elems));
    return g;
}

GroupPtr subgroup_where(const GroupPtr& G, const std::function<bool(std::uint64_t)>& pred) {
    std::vector<std::uint64_t> elems;
    for (std::uint64_t e : G->elements())
        if (pred(e)) elems.push_back(e);
    require(!elems.empty(), ErrorKind::NotASubgroup, "predicate selects no elements");
    std::unordered_set<std::uint64_t> set(elems.begin(), elems.end());
    require(set.count(G->id()) > 0, ErrorKind::NotASubgroup, "subset misses the identity");
    for (std::uint64_t x : elems) {
        for (std::uint64_t y : elems)
            require(set.count(G->mul(x, y)) > 0, ErrorKind::NotASubgroup,
                    "subset is not closed under multiplication");
        require(set.count(G->inv(x)) > 0, ErrorKind::NotASubgroup,
                "subset is not closed under inverse");
    }
    auto h = std::shared_ptr<Group>(new Group());
    h->kind = GroupKind::subgroup;
    h->coord_kind_ = G->coord_kind_;
    h->n = G->n;
    h->ring = G->ring;
    h->params = {{"parent", G->params}, {"kind", group_kind_name(G->kind)}};
    h->finish(std::move(elems));
    return h;
}

GroupPtr make_borel(const GroupPtr& G) {
    require(G->kind == GroupKind::gl2ar, ErrorKind::InvalidArgument,
            "triangular subgroup is defined for the 2x2 ring groups");
    return subgroup_where(G, [&](std::uint64_t g) { return G->entry(g, 1, 0) == 0; });
}

GroupPtr make_torus(const GroupPtr& G) {
    require(G->kind == GroupKind::gl2ar, ErrorKind::InvalidArgument,
            "diagonal subgroup is defined for the 2x2 ring groups");
    return subgroup_where(
        G, [&](std::uint64_t g) { return G->entry(g, 1, 0) == 0 && G->entry(g, 0, 1) == 0; });
}

// --- generators and classes ---------------------------------------------------

const std::vector<std::uint64_t>& Group::generators() const {
    std::lock_guard<std::mutex> lock(lazy_mu_);
    if (!gens_) {
        std::vector<std::uint64_t> gens;
        std::unordered_set<std::uint64_t> span{id_};
        std::vector<std::uint64_t> span_list{id_};
        for (std::uint64_t e : elements_) {
            if (span.count(e)) continue;
            gens.push_back(e);
            // closure of <gens> by right multiplication from the identity
            std::vector<std::uint64_t> queue{id_};
            std::unordered_set<std::uint64_t> seen{id_};
            for (std::size_t i = 0; i < queue.size(); ++i)
                for (std::uint64_t g : gens) {
                    std::uint64_t w = mul(queue[i], g);
                    if (seen.insert(w).second) queue.push_back(w);
                }
            span = std::move(seen);
            span_list = std::move(queue);
            if (span_list.size() == elements_.size()) break;
        }
        require(span.size() == elements_.size(), ErrorKind::Internal,
                "generating set failed to span the group");
        gens_ = std::move(gens);
    }
    return *gens_;
}

const ConjClasses& Group::classes() const {
    const auto& gens = generators(); // take the lazy lock on its own first
    std::lock_guard<std::mutex> lock(lazy_mu_);
    if (!classes_) {
        ConjClasses cc;
        // cache unpacked generators and inverses for the orbit walk
        std::vector<Mat> gu, giu;
        for (std::uint64_t g : gens) {
            Mat a{}, b{};
            unpack_into(*this, g, a);
            unpack_into(*this, inv(g), b);
            gu.push_back(a);
            giu.push_back(b);
        }
        std::unordered_set<std::uint64_t> visited;
        visited.reserve(elements_.size() * 2);
        for (std::uint64_t e : elements_) {
            if (visited.count(e)) continue;
            std::vector<std::uint64_t> orbit{e};
            visited.insert(e);
            for (std::size_t i = 0; i < orbit.size(); ++i) {
                Mat w{}, t1{}, t2{};
                unpack_into(*this, orbit[i], w);
                for (std::size_t k = 0; k < gu.size(); ++k) {
                    matmul(*this, gu[k], w, t1);
                    matmul(*this, t1, giu[k], t2);
                    std::uint64_t x = pack_from(*this, t2);
                    if (visited.insert(x).second) orbit.push_back(x);
                }
            }
            std::sort(orbit.begin(), orbit.end());
            std::uint32_t idx = static_cast<std::uint32_t>(cc.representatives.size());
            cc.representatives.push_back(orbit.front());
            cc.sizes.push_back(static_cast<long>(orbit.size()));
            for (std::uint64_t x : orbit) cc.index_of.emplace(x, idx);
            cc.members.push_back(std::move(orbit));
        }
        long total = 0;
        for (long s : cc.sizes) {
            require(order() % s == 0, ErrorKind::Internal, "class size does not divide order");
            total += s;
        }
        require(total == order(), ErrorKind::Internal, "class sizes do not sum to order");
        classes_ = std::move(cc);
    }
    return *classes_;
}

GroupPtr center(const GroupPtr& G) {
    const auto& gens = G->generators();
    return subgroup_where(G, [&](std::uint64_t g) {
        for (std::uint64_t h : gens)
            if (G->mul(g, h) != G->mul(h, g)) return false;
        return true;
    });
}

long centralizer_order(const Group& G, std::uint64_t x) {
    const ConjClasses& cc = G.classes();
    auto it = cc.index_of.find(x);
    require(it != cc.index_of.end(), ErrorKind::InvalidArgument, "element is not in the group");
    return G.order() / cc.sizes[it->second];
}

bool is_group_hom(const Group& G, const Group& H,
                  const std::function<std::uint64_t(std::uint64_t)>& f) {
    std::vector<std::uint64_t> image(G.elements().size());
    for (std::size_t i = 0; i < G.elements().size(); ++i) {
        image[i] = f(G.elements()[i]);
        if (!H.contains(image[i])) return false;
    }
    for (std::size_t i = 0; i < G.elements().size(); ++i)
        for (std::size_t j = 0; j < G.elements().size(); ++j) {
            std::uint64_t prod = G.mul(G.elements()[i], G.elements()[j]);
            if (H.mul(image[i], image[j]) != image[G.index_of(prod)]) return false;
        }
    return true;
}

nlohmann::json group_info_json(const Group& G) {
    const ConjClasses& cc = G.classes();
    return {{"kind", group_kind_name(G.kind)},
            {"params", G.params},
            {"order", G.order()},
            {"num_classes", cc.count()},
            {"class_sizes", cc.sizes}};
}

} // namespace charfn
