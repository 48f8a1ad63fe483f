#include "charfn/psgl2.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "charfn/config.hpp"
#include "charfn/error.hpp"

namespace charfn {

namespace {

void check_units_system(const LevelSystem* s) {
    require(s != nullptr, ErrorKind::InvalidArgument, "null character tower");
    require(s->kind == DualKind::a2_units, ErrorKind::InvalidArgument,
            "torus characters are built over a unit-group character tower");
}

std::string dual_str(const DualElt& d) {
    std::ostringstream os;
    os << d.level << ":[";
    for (std::size_t i = 0; i < d.e.size(); ++i) os << (i ? "," : "") << d.e[i];
    os << "]";
    return os.str();
}

} // namespace

const LevelSystem* unit_tower(const FqDesc* ground, int bound) {
    require(ground != nullptr, ErrorKind::InvalidArgument, "null ground field");
    return LevelSystem::get(DualKind::a2_units, ground->p, ground->a, bound);
}

std::vector<DualElt> unit_chars(const LevelSystem* units, int m) {
    check_units_system(units);
    units->require_level(m);
    std::vector<DualElt> out;
    for (int d : units->levels())
        if (m % d == 0) {
            std::vector<DualElt> at = canonical_at_level(units, d);
            for (DualElt& e : at) out.push_back(std::move(e));
        }
    return out;
}

bool is_regular(const LevelSystem* units, int m, const DualElt& psi1, const DualElt& psi2) {
    check_units_system(units);
    units->require_level(m);
    require(psi1.system == units && psi2.system == units, ErrorKind::InvalidArgument,
            "the pair must live in the given tower");
    require(m % psi1.level == 0 && m % psi2.level == 0, ErrorKind::InvalidLevel,
            "both character levels must divide the evaluation level");
    DualElt ratio = dual_mul(psi1, dual_inv(psi2));
    long Q = ar_ring(units->p, units->a, m, 2)->base->q;
    for (long c = 1; c < Q; ++c) {
        std::uint64_t x = 1 + static_cast<std::uint64_t>(c) * Q; // 1 + eps c
        if (!(char_fn_at(ratio, m, x) == Cyc::one(1))) return true;
    }
    return false;
}

TorusChar make_torus_char(const LevelSystem* units, int m, DualElt psi1, DualElt psi2) {
    bool reg = is_regular(units, m, psi1, psi2);
    return {units, m, std::move(psi1), std::move(psi2), reg};
}

std::vector<TorusChar> all_torus_chars(const LevelSystem* units, int m) {
    std::vector<DualElt> cs = unit_chars(units, m);
    std::vector<TorusChar> out;
    out.reserve(cs.size() * cs.size());
    for (const DualElt& p1 : cs)
        for (const DualElt& p2 : cs) out.push_back(make_torus_char(units, m, p1, p2));
    return out;
}

std::vector<TorusChar> regular_chars(const LevelSystem* units, int m) {
    std::vector<TorusChar> out;
    for (TorusChar& t : all_torus_chars(units, m))
        if (t.regular) out.push_back(std::move(t));
    return out;
}

TorusChar swap_torus_char(const TorusChar& t) {
    // the inverse ratio is nontrivial exactly when the ratio is
    return {t.units, t.level, t.psi2, t.psi1, t.regular};
}

TorusChar raise_torus_char(const TorusChar& t, int m) {
    require(m % t.level == 0, ErrorKind::InvalidLevel,
            "can only raise to a multiple of the current level");
    return make_torus_char(t.units, m, t.psi1, t.psi2);
}

std::string torus_char_str(const TorusChar& t) {
    return "(" + dual_str(t.psi1) + " x " + dual_str(t.psi2) + " @ " + std::to_string(t.level) +
           ")";
}

const FlagGeom* flag_geom(const FqDesc* ground, int m) {
    require(ground != nullptr, ErrorKind::InvalidArgument, "null ground field");
    require(m >= 1, ErrorKind::InvalidLevel, "levels are positive");
    static std::mutex mu;
    static std::map<std::pair<const FqDesc*, int>, std::unique_ptr<FlagGeom>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({ground, m});
    if (it != cache.end()) return it->second.get();

    auto L = std::make_unique<FlagGeom>();
    L->ground = ground;
    L->m = m;
    L->group = make_gl2ar(ground, m, 2);
    L->ring = L->group->ring.ar;
    L->borel = make_borel(L->group);
    L->torus = make_torus(L->group);

    std::vector<bool> seen(L->group->order(), false);
    for (std::uint64_t x : L->group->elements()) {
        if (seen[L->group->index_of(x)]) continue;
        L->cosets.push_back(x);
        for (std::uint64_t b : L->borel->elements())
            seen[L->group->index_of(L->group->mul(x, b))] = true;
    }

    long S = static_cast<long>(L->ring->size());
    long Q = L->ring->base->q;
    for (long s = 0; s < S; ++s)
        L->lines.push_back({1u, static_cast<std::uint32_t>(s)});
    for (long t = 0; t < Q; ++t)
        L->lines.push_back({static_cast<std::uint32_t>(t * Q), 1u});
    require(L->lines.size() == L->cosets.size(), ErrorKind::Internal,
            "line and coset counts disagree");

    const FlagGeom* out = L.get();
    cache.emplace(std::make_pair(ground, m), std::move(L));
    return out;
}

std::uint64_t embed_gl2(const FqDesc* ground, int from, int to, std::uint64_t g) {
    require(to % from == 0, ErrorKind::InvalidLevel,
            "the target level must be a multiple of the source level");
    const FlagGeom* lf = flag_geom(ground, from);
    require(lf->group->contains(g), ErrorKind::InvalidArgument, "element outside the level group");
    if (from == to) return g;
    const FlagGeom* lt = flag_geom(ground, to);
    const FieldTower& tw = FieldTower::get(ground->p, ground->a * to);
    long qf = lf->ring->base->q;
    long qt = lt->ring->base->q;
    std::vector<std::uint32_t> in = lf->group->unpack(g);
    std::vector<std::uint32_t> out(4);
    for (int i = 0; i < 4; ++i) {
        std::uint32_t c0 = static_cast<std::uint32_t>(in[i] % qf);
        std::uint32_t c1 = static_cast<std::uint32_t>(in[i] / qf);
        out[i] = tw.embed(ground->a * from, ground->a * to, c0) +
                 tw.embed(ground->a * from, ground->a * to, c1) * static_cast<std::uint32_t>(qt);
    }
    return lt->group->from_entries(out);
}

namespace {

void check_pair(const FlagGeom* L, const TorusChar& t) {
    check_units_system(t.units);
    require(t.units->p == L->ground->p && t.units->a == L->ground->a, ErrorKind::InvalidArgument,
            "the character tower and the group must share a ground field");
    require(t.level == L->m, ErrorKind::InvalidLevel,
            "the torus character level must match the flag level");
}

Cyc psi_pair_at(const TorusChar& t, std::uint32_t d1, std::uint32_t d2) {
    return char_fn_at(t.psi1, t.level, d1) * char_fn_at(t.psi2, t.level, d2);
}

} // namespace

ClassFn borel_linear(const FlagGeom* L, const TorusChar& t) {
    check_pair(L, t);
    const GroupPtr& B = L->borel;
    return from_pointwise(
        B, [&](std::uint64_t b) { return psi_pair_at(t, B->entry(b, 0, 0), B->entry(b, 1, 1)); },
        "lin" + torus_char_str(t));
}

ClassFn induced_c(const FlagGeom* L, const TorusChar& t) {
    ClassFn c = induce(borel_linear(L, t), L->group);
    c.label = "c" + torus_char_str(t);
    return c;
}

Cyc chi_fixed_point(const FlagGeom* L, const TorusChar& t, std::uint64_t g) {
    check_pair(L, t);
    const GroupPtr& G = L->group;
    require(G->contains(g), ErrorKind::InvalidArgument, "element outside the group");
    Cyc acc = Cyc::zero(1);
    for (std::uint64_t x : L->cosets) {
        std::uint64_t u = G->mul(G->mul(G->inv(x), g), x);
        if (G->entry(u, 1, 0) != 0) continue;
        acc += psi_pair_at(t, G->entry(u, 0, 0), G->entry(u, 1, 1));
    }
    return acc;
}

ClassFn chi_fn(const FlagGeom* L, const TorusChar& t) {
    const ConjClasses& cc = L->group->classes();
    std::vector<Cyc> vals;
    vals.reserve(cc.count());
    for (std::uint64_t rep : cc.representatives) vals.push_back(chi_fixed_point(L, t, rep));
    return from_class_values(L->group, std::move(vals), "chi" + torus_char_str(t));
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> stable_line_scalars(const FlagGeom* L,
                                                                         std::uint64_t g) {
    const GroupPtr& G = L->group;
    require(G->contains(g), ErrorKind::InvalidArgument, "element outside the group");
    const CoeffRing& R = G->ring;
    std::uint32_t g00 = G->entry(g, 0, 0), g01 = G->entry(g, 0, 1);
    std::uint32_t g10 = G->entry(g, 1, 0), g11 = G->entry(g, 1, 1);
    std::uint32_t det = R.sub(R.mul(g00, g11), R.mul(g01, g10));
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (const std::array<std::uint32_t, 2>& v : L->lines) {
        std::uint32_t w0 = R.add(R.mul(g00, v[0]), R.mul(g01, v[1]));
        std::uint32_t w1 = R.add(R.mul(g10, v[0]), R.mul(g11, v[1]));
        std::uint32_t a1;
        if (v[0] == 1) { // the (1, s) family
            a1 = w0;
            if (R.mul(a1, v[1]) != w1) continue;
        } else { // the (eps t, 1) family
            a1 = w1;
            if (R.mul(a1, v[0]) != w0) continue;
        }
        out.emplace_back(a1, R.mul(det, R.inv(a1)));
    }
    return out;
}

Cyc trace_over_fiber(const FlagGeom* L, const TorusChar& t, std::uint64_t g) {
    check_pair(L, t);
    Cyc acc = Cyc::zero(1);
    for (const auto& [a1, a2] : stable_line_scalars(L, g)) acc += psi_pair_at(t, a1, a2);
    return acc;
}

long fiber_point_count(const FlagGeom* L, std::uint64_t g) {
    return static_cast<long>(stable_line_scalars(L, g).size());
}

namespace {

// roots of x^2 - T x + N in the field: 2 distinct, 1 double, 0 none;
// when a root exists, *root receives one
int quad_root_count(const FqDesc* f, std::uint32_t T, std::uint32_t N,
                    std::uint32_t* root = nullptr) {
    int roots = 0;
    for (std::uint32_t x = 0; x < f->q; ++x)
        if (f->add(f->sub(f->mul(x, x), f->mul(T, x)), N) == 0) {
            ++roots;
            if (root != nullptr) *root = x;
        }
    return roots;
}

} // namespace

FiberClass fiber_class(const FlagGeom* L, std::uint64_t g) {
    const GroupPtr& G = L->group;
    require(G->contains(g), ErrorKind::InvalidArgument, "element outside the group");
    const CoeffRing& R = G->ring;
    const FqDesc* f = L->ring->base;
    long Q = f->q;
    std::uint32_t e00 = G->entry(g, 0, 0), e01 = G->entry(g, 0, 1);
    std::uint32_t e10 = G->entry(g, 1, 0), e11 = G->entry(g, 1, 1);
    std::uint32_t A = e00 % Q, B = e01 % Q, C = e10 % Q, D = e11 % Q;
    if (B != 0 || C != 0 || A != D) {
        // regular reduction; split by the characteristic polynomial
        std::uint32_t lam = 0;
        int r = quad_root_count(f, f->add(A, D), f->sub(f->mul(A, D), f->mul(B, C)), &lam);
        if (r == 2) return {1, true};
        if (r == 0) return {0, false};
        // double eigenvalue: the characteristic polynomial over the ring
        // takes one value on all lifts of it, and a stable line exists
        // exactly when that value vanishes
        std::uint32_t T = R.add(e00, e11);
        std::uint32_t N = R.sub(R.mul(e00, e11), R.mul(e01, e10));
        std::uint32_t val = R.add(R.sub(R.mul(lam, lam), R.mul(T, lam)), N);
        if (val == 0) return {2, true};
        return {6, false};
    }
    // scalar reduction: g = A (1 + eps M) with M the scaled eps part
    std::uint32_t ia = f->inv(A);
    std::uint32_t m00 = f->mul(ia, e00 / Q), m01 = f->mul(ia, e01 / Q);
    std::uint32_t m10 = f->mul(ia, e10 / Q), m11 = f->mul(ia, e11 / Q);
    if (m01 == 0 && m10 == 0 && m00 == m11) return {5, true};
    int r = quad_root_count(f, f->add(m00, m11), f->sub(f->mul(m00, m11), f->mul(m01, m10)));
    if (r == 2) return {3, true};
    if (r == 0) return {3, false};
    return {4, true};
}

long predicted_fiber_count(const FiberClass& c, long Q, int d) {
    require(Q >= 2 && d >= 1, ErrorKind::InvalidArgument, "bad extension data");
    long qd = 1;
    for (int i = 0; i < d; ++i) qd *= Q;
    bool even = d % 2 == 0;
    switch (c.case_tag) {
        case 1: return 2;
        case 0: return even ? 2 : 0;
        case 2: return qd;
        case 6: return 0;
        case 3: return c.split || even ? 2 * qd : 0;
        case 4: return qd;
        case 5: return qd * (qd + 1);
        default: fail(ErrorKind::Internal, "unknown fiber class");
    }
}

FiberReport classify_fiber(const FqDesc* ground, int g_level, std::uint64_t g,
                           const std::vector<int>& levels) {
    const FlagGeom* L = flag_geom(ground, g_level);
    FiberReport rep;
    rep.cls = fiber_class(L, g);
    for (int M : levels) {
        if (M % g_level != 0) continue;
        const FlagGeom* lm = flag_geom(ground, M);
        rep.point_counts[M] = fiber_point_count(lm, embed_gl2(ground, g_level, M, g));
    }
    return rep;
}

SupportCounts support_counts(const FqDesc* ground, int m) {
    require(ground != nullptr, ErrorKind::InvalidArgument, "null ground field");
    require(m >= 1, ErrorKind::InvalidLevel, "levels are positive");
    const FqDesc* f = gf(ground->p, ground->a * m);
    long Q = f->q;
    long q3 = Q * Q * Q;
    long q4 = q3 * Q; // free eps parts over a fixed reduction
    SupportCounts sc;
    for (std::uint32_t A = 0; A < Q; ++A)
        for (std::uint32_t B = 0; B < Q; ++B)
            for (std::uint32_t C = 0; C < Q; ++C)
                for (std::uint32_t D = 0; D < Q; ++D) {
                    if (f->sub(f->mul(A, D), f->mul(B, C)) == 0) continue;
                    if (B == 0 && C == 0 && A == D) continue; // scalars handled below
                    int r = quad_root_count(f, f->add(A, D),
                                            f->sub(f->mul(A, D), f->mul(B, C)));
                    if (r == 2) sc.split_rss += q4;
                    else if (r == 0) sc.nonsplit_rss += q4;
                    else {
                        // the eigenvalue lifts on a hyperplane of eps parts
                        sc.case2 += q3;
                        sc.non_tri += q4 - q3;
                    }
                }
    // scalar reductions: Q - 1 unit scalars, and the scaled eps part
    // ranges over every 2x2 matrix over the field
    long scalars = Q - 1;
    for (std::uint32_t a = 0; a < Q; ++a)
        for (std::uint32_t b = 0; b < Q; ++b)
            for (std::uint32_t c = 0; c < Q; ++c)
                for (std::uint32_t d = 0; d < Q; ++d) {
                    if (b == 0 && c == 0 && a == d) {
                        sc.g2 += scalars;
                        continue;
                    }
                    int r = quad_root_count(f, f->add(a, d), f->sub(f->mul(a, d), f->mul(b, c)));
                    if (r == 2) sc.g1_split += scalars;
                    else if (r == 0) sc.g1_nonsplit += scalars;
                    else sc.case4 += scalars;
                }
    sc.total = sc.g0() + sc.non_tri + sc.g1() + sc.g2;
    require(sc.total == q4 * (Q * Q - 1) * (Q * Q - Q), ErrorKind::Internal,
            "stratum tallies do not sum to the group order");
    return sc;
}

std::vector<Rat> fit_polynomial(const std::vector<std::pair<long, Int>>& points) {
    std::size_t n = points.size();
    require(n >= 1, ErrorKind::InvalidArgument, "no sample points");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            require(points[i].first != points[j].first, ErrorKind::InvalidArgument,
                    "sample points must be distinct");
    // Newton divided differences, then expansion to the monomial basis
    std::vector<Rat> col(n), coef(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = Rat(points[i].second);
    coef[0] = col[0];
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t i = 0; i + k < n; ++i)
            col[i] = (col[i + 1] - col[i]) / Rat(points[i + k].first - points[i].first);
        coef[k] = col[0];
    }
    std::vector<Rat> out(n, Rat(0));
    std::vector<Rat> basis{Rat(1)};
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < basis.size(); ++j) out[j] += coef[k] * basis[j];
        std::vector<Rat> nb(basis.size() + 1, Rat(0));
        for (std::size_t j = 0; j < basis.size(); ++j) {
            nb[j + 1] += basis[j];
            nb[j] -= basis[j] * Rat(points[k].first);
        }
        basis = std::move(nb);
    }
    while (out.size() > 1 && out.back() == 0) out.pop_back();
    return out;
}

namespace {

std::string values_key(const ClassFn& f) {
    std::string key;
    for (const Cyc& v : f.values) {
        key += v.to_string();
        key += ';';
    }
    return key;
}

bool fits_monic_integer(const std::vector<Rat>& coeffs, std::size_t degree) {
    if (coeffs.size() != degree + 1) return false;
    if (coeffs.back() != 1) return false;
    for (const Rat& c : coeffs)
        if (!rat_is_integer(c)) return false;
    return true;
}

} // namespace

VerificationReport gl2a2_verify(const FqDesc* ground, std::vector<int> levels) {
    require(ground != nullptr, ErrorKind::InvalidArgument, "null ground field");
    require(!levels.empty(), ErrorKind::InvalidArgument, "no levels given");
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    require(levels.front() >= 1, ErrorKind::InvalidLevel, "levels are positive");
    int bound = 1;
    for (int m : levels) bound = std::lcm(bound, m);
    const LevelSystem* units = unit_tower(ground, bound);

    VerificationReport rep;
    rep.suite = "gl2a2";
    rep.params = {{"q", ground->q}, {"levels", levels}};

    std::map<int, std::vector<TorusChar>> chars_by_level;

    for (int m : levels) {
        const FlagGeom* L = flag_geom(ground, m);
        const GroupPtr& G = L->group;
        const ConjClasses& cc = G->classes();
        long Q = L->ring->base->q;
        const std::string tag = "level " + std::to_string(m) + ": ";

        rep.add(tag + "flag count equals the triangular index q(q+1)",
                static_cast<long>(L->lines.size()) == Q * (Q + 1) &&
                    G->order() == Q * (Q + 1) * L->borel->order(),
                std::to_string(L->lines.size()) + " flags");

        std::vector<TorusChar> chars = all_torus_chars(units, m);
        chars_by_level[m] = chars;
        std::size_t n_units = unit_chars(units, m).size();
        long reg_count = 0;

        // the cached flag against a direct two-sided evaluation on the
        // congruence subgroup
        bool reg_agrees = true;
        std::string reg_witness;
        for (const TorusChar& t : chars) {
            bool direct = false;
            for (long c = 1; c < Q && !direct; ++c) {
                std::uint64_t x = 1 + static_cast<std::uint64_t>(c) * Q;
                direct = !(char_fn_at(t.psi1, m, x) == char_fn_at(t.psi2, m, x));
            }
            if (direct != t.regular) {
                reg_agrees = false;
                reg_witness = torus_char_str(t);
                break;
            }
            if (t.regular) ++reg_count;
        }
        rep.add(tag + "the regular locus is cut out by the congruence subgroup", reg_agrees,
                reg_agrees ? std::to_string(reg_count) + " of " + std::to_string(chars.size()) +
                                 " pairs"
                           : reg_witness);

        // one induced character per pair, kept for the swap comparison
        std::vector<ClassFn> induced;
        induced.reserve(chars.size());
        for (const TorusChar& t : chars) induced.push_back(induced_c(L, t));

        bool deg_ok = true, chi_ok = true, fiber_ok = true, norm_ok = true;
        std::string deg_w, chi_w, fiber_w, norm_w;
        for (std::size_t i = 0; i < chars.size(); ++i) {
            const TorusChar& t = chars[i];
            const ClassFn& c = induced[i];
            if (deg_ok && !(c.degree() == Cyc(1, Rat(Q * (Q + 1))))) {
                deg_ok = false;
                deg_w = c.label;
            }
            for (std::size_t k = 0; k < cc.count(); ++k) {
                std::uint64_t g = cc.representatives[k];
                Cyc chi = chi_fixed_point(L, t, g);
                if (chi_ok && chi != c.values[k]) {
                    chi_ok = false;
                    chi_w = c.label + " at " + G->to_string(g);
                }
                if (fiber_ok && trace_over_fiber(L, t, g) != chi) {
                    fiber_ok = false;
                    fiber_w = c.label + " at " + G->to_string(g);
                }
            }
            Cyc nn = inner(c, c);
            bool unit_norm = nn == Cyc::one(1);
            if (norm_ok && unit_norm != t.regular) {
                norm_ok = false;
                norm_w = c.label + " has norm " + nn.to_string();
            }
        }
        rep.add(tag + "induced characters have the full flag degree", deg_ok, deg_w);
        rep.add(tag + "the fixed-flag sum matches the induced character on all classes", chi_ok,
                chi_w);
        rep.add(tag + "the stable-line sum matches the fixed-flag sum", fiber_ok, fiber_w);
        rep.add(tag + "the induced norm is 1 exactly on the regular locus", norm_ok, norm_w);

        bool swap_ok = true;
        std::string swap_w;
        std::set<std::string> distinct_regular;
        for (std::size_t i = 0; i < n_units && swap_ok; ++i)
            for (std::size_t j = 0; j < n_units; ++j) {
                if (induced[i * n_units + j].values != induced[j * n_units + i].values) {
                    swap_ok = false;
                    swap_w = induced[i * n_units + j].label;
                    break;
                }
            }
        for (std::size_t i = 0; i < chars.size(); ++i)
            if (chars[i].regular) distinct_regular.insert(values_key(induced[i]));
        rep.add(tag + "swapping the pair fixes the induced character", swap_ok, swap_w);
        rep.add(tag + "distinct regular characters number half the regular pairs",
                static_cast<long>(distinct_regular.size()) * 2 == reg_count,
                std::to_string(distinct_regular.size()) + " distinct");

        bool central_ok = true;
        std::string central_w;
        for (std::size_t i = 0; i < chars.size() && central_ok; ++i)
            for (std::uint64_t u : units->elements(m)) {
                std::uint64_t zg = G->from_entries({static_cast<std::uint32_t>(u), 0, 0,
                                                    static_cast<std::uint32_t>(u)});
                Cyc want = psi_pair_at(chars[i], static_cast<std::uint32_t>(u),
                                       static_cast<std::uint32_t>(u)) *
                           Rat(Q * (Q + 1));
                if (induced[i].at(zg) != want) {
                    central_ok = false;
                    central_w = induced[i].label + " at the scalar " +
                                units->to_string(m, u);
                    break;
                }
            }
        rep.add(tag + "central values scale by the product character", central_ok, central_w);

        // fiber shapes on all classes, plus the elementwise stratum tally
        bool shapes_ok = true, cover_ok = true;
        std::string shapes_w, cover_w;
        bool saw_split = false;
        for (std::size_t k = 0; k < cc.count(); ++k) {
            std::uint64_t g = cc.representatives[k];
            FiberClass fc = fiber_class(L, g);
            auto scalars = stable_line_scalars(L, g);
            if (shapes_ok &&
                static_cast<long>(scalars.size()) != predicted_fiber_count(fc, Q, 1)) {
                shapes_ok = false;
                shapes_w = G->to_string(g) + " tag " + std::to_string(fc.case_tag);
            }
            if (fc.case_tag == 1) {
                saw_split = true;
                bool two = scalars.size() == 2;
                bool swapped = two && scalars[0].first == scalars[1].second &&
                               scalars[0].second == scalars[1].first &&
                               scalars[0].first != scalars[1].first;
                if (cover_ok && !(two && swapped)) {
                    cover_ok = false;
                    cover_w = G->to_string(g);
                }
            }
        }
        rep.add(tag + "fiber sizes match the classified shapes on all classes", shapes_ok,
                shapes_w);
        rep.add(tag + "the covering over split regular points is a swapped double fiber",
                cover_ok, cover_ok && !saw_split ? "vacuous at this level" : cover_w);

        SupportCounts fast = support_counts(ground, m);
        SupportCounts brute;
        for (std::uint64_t g : G->elements()) {
            FiberClass fc = fiber_class(L, g);
            if (fc.case_tag == 1) ++brute.split_rss;
            else if (fc.case_tag == 0) ++brute.nonsplit_rss;
            else if (fc.case_tag == 2) ++brute.case2;
            else if (fc.case_tag == 6) ++brute.non_tri;
            else if (fc.case_tag == 3 && fc.split) ++brute.g1_split;
            else if (fc.case_tag == 3) ++brute.g1_nonsplit;
            else if (fc.case_tag == 4) ++brute.case4;
            else ++brute.g2;
        }
        brute.total = G->order();
        bool tally_ok = fast.split_rss == brute.split_rss &&
                        fast.nonsplit_rss == brute.nonsplit_rss && fast.case2 == brute.case2 &&
                        fast.non_tri == brute.non_tri && fast.g1_split == brute.g1_split &&
                        fast.g1_nonsplit == brute.g1_nonsplit && fast.case4 == brute.case4 &&
                        fast.g2 == brute.g2 && fast.total == brute.total;
        rep.add(tag + "stratum tallies match the elementwise classification", tally_ok,
                "g0 " + std::to_string(fast.g0()) + ", outside " +
                    std::to_string(fast.non_tri) + ", g1 " + std::to_string(fast.g1()) +
                    ", g2 " + std::to_string(fast.g2));
        rep.add(tag + "the strata partition the group",
                fast.g0() + fast.non_tri + fast.g1() + fast.g2 == G->order());
        rep.add(tag + "the deepest stratum has q(q-1) elements", fast.g2 == Q * (Q - 1),
                std::to_string(fast.g2) + " central-type elements");

        // the vanishing wall: case-2 fibers cancel exactly for regular pairs
        bool wall_ok = true;
        std::string wall_w;
        for (std::size_t k = 0; k < cc.count() && wall_ok; ++k) {
            std::uint64_t g = cc.representatives[k];
            if (fiber_class(L, g).case_tag != 2) continue;
            for (std::size_t i = 0; i < chars.size(); ++i) {
                Cyc tr = trace_over_fiber(L, chars[i], g);
                if (tr.is_zero() != chars[i].regular) {
                    wall_ok = false;
                    wall_w = induced[i].label + " at " + G->to_string(g) + " gives " +
                             tr.to_string();
                    break;
                }
            }
        }
        rep.add(tag + "the fiber sum vanishes on the wall exactly for regular pairs", wall_ok,
                wall_w);
    }

    // cross-level statements for each divisor pair of levels
    for (int m : levels)
        for (int M : levels) {
            if (M <= m || M % m != 0) continue;
            const std::string tag =
                "levels " + std::to_string(m) + "|" + std::to_string(M) + ": ";
            const FlagGeom* L = flag_geom(ground, m);
            long Q = L->ring->base->q;
            const ConjClasses& cc = L->group->classes();

            bool counts_ok = true;
            std::string counts_w;
            for (std::size_t k = 0; k < cc.count(); ++k) {
                std::uint64_t g = cc.representatives[k];
                FiberReport fr = classify_fiber(ground, m, g, {M});
                if (fr.point_counts[M] != predicted_fiber_count(fr.cls, Q, M / m)) {
                    counts_ok = false;
                    counts_w = L->group->to_string(g);
                    break;
                }
            }
            rep.add(tag + "fiber counts over the extension follow the classified shapes",
                    counts_ok, counts_w);

            bool raise_ok = true;
            std::string raise_w;
            for (const TorusChar& t : chars_by_level[m]) {
                if (raise_torus_char(t, M).regular != t.regular) {
                    raise_ok = false;
                    raise_w = torus_char_str(t);
                    break;
                }
            }
            rep.add(tag + "regularity is stable under level raising", raise_ok, raise_w);
        }

    // stratum growth across ground fields: the gl1-type middle stratum is
    // monic of degree 5, the central one of degree 2
    {
        const std::vector<std::pair<int, int>> fields = {{2, 1}, {3, 1}, {2, 2},
                                                         {5, 1}, {7, 1}, {2, 3}};
        std::vector<std::pair<long, Int>> pts1, pts2;
        for (auto [p, a] : fields) {
            const FqDesc* f = gf(p, a);
            SupportCounts sc = support_counts(f, 1);
            pts1.emplace_back(f->q, Int(sc.g1()));
            pts2.emplace_back(f->q, Int(sc.g2));
        }
        std::vector<Rat> fit1 = fit_polynomial(pts1);
        std::vector<Rat> fit2 = fit_polynomial(pts2);
        rep.add("stratum growth is monic of the complementary dimensions",
                fits_monic_integer(fit1, 5) && fits_monic_integer(fit2, 2),
                "degrees " + std::to_string(fit1.size() - 1) + " and " +
                    std::to_string(fit2.size() - 1));
    }

    return rep;
}

nlohmann::json fibers_to_json(const FqDesc* ground, int m) {
    const FlagGeom* L = flag_geom(ground, m);
    const ConjClasses& cc = L->group->classes();
    nlohmann::json classes = nlohmann::json::array();
    for (std::size_t k = 0; k < cc.count(); ++k) {
        std::uint64_t g = cc.representatives[k];
        FiberClass fc = fiber_class(L, g);
        std::string label = std::to_string(fc.case_tag);
        if (fc.case_tag == 0) label = "empty";
        if (fc.case_tag == 6) label = "non-triangularizable";
        classes.push_back({{"representative", L->group->to_string(g)},
                           {"size", cc.sizes[k]},
                           {"case", label},
                           {"split", fc.split},
                           {"points", fiber_point_count(L, g)}});
    }
    return {{"q", ground->q},
            {"level", m},
            {"group_order", L->group->order()},
            {"class_count", cc.count()},
            {"classes", classes}};
}

} // namespace charfn
