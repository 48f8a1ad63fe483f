#include "charfn/kirillov.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "charfn/error.hpp"
#include "charfn/gf.hpp"

namespace charfn {

namespace {

const FqDesc* base_field(const NilLie& L) { return L.group->ring.field; }

void check_lie(const NilLie& L) {
    require(L.group != nullptr, ErrorKind::InvalidArgument, "null group");
    require(L.group->kind == GroupKind::heisenberg, ErrorKind::InvalidArgument,
            "the orbit method here is implemented for [a,b,c] groups only");
    require(base_field(L)->p != 2, ErrorKind::UnsupportedCharacteristic,
            "the log series needs 2 to be a unit");
}

void check_coords(const NilLie& L, const std::array<std::uint32_t, 3>& c) {
    for (std::uint32_t v : c)
        require(v < base_field(L)->q, ErrorKind::InvalidArgument,
                "coordinate is not a field code");
}

std::string functional_str(const LieFunctional& f) {
    std::ostringstream os;
    os << "(" << f.coords[0] << "," << f.coords[1] << "," << f.coords[2] << ")";
    return os.str();
}

} // namespace

NilLie nil_lie(const GroupPtr& g) {
    NilLie L{g, 3};
    check_lie(L);
    return L;
}

LieElt lie_log(const NilLie& L, std::uint64_t g) {
    check_lie(L);
    require(L.group->contains(g), ErrorKind::InvalidArgument, "not a group element");
    const FqDesc* f = base_field(L);
    std::vector<std::uint32_t> t = L.group->coords(g); // a, b, c
    // log g = (g-1) - (g-1)^2 / 2 and (g-1)^2 = ac E13
    std::uint32_t inv2 = f->inv(f->add(1, 1));
    std::uint32_t x13 = f->sub(t[1], f->mul(f->mul(t[0], t[2]), inv2));
    return {{t[0], t[2], x13}};
}

std::uint64_t lie_exp(const NilLie& L, const LieElt& x) {
    check_lie(L);
    check_coords(L, x.c);
    const FqDesc* f = base_field(L);
    std::uint32_t inv2 = f->inv(f->add(1, 1));
    std::uint32_t b = f->add(x.c[2], f->mul(f->mul(x.c[0], x.c[1]), inv2));
    return L.group->from_coords({x.c[0], b, x.c[1]});
}

std::uint32_t lie_pair(const NilLie& L, const LieFunctional& f, const LieElt& x) {
    const FqDesc* k = base_field(L);
    std::uint32_t acc = 0;
    for (int i = 0; i < 3; ++i) acc = k->add(acc, k->mul(f.coords[i], x.c[i]));
    return acc;
}

LieFunctional coad_act(const NilLie& L, std::uint64_t g, const LieFunctional& f) {
    check_lie(L);
    check_coords(L, f.coords);
    require(L.group->contains(g), ErrorKind::InvalidArgument, "not a group element");
    std::uint64_t gi = L.group->inv(g);
    LieFunctional out;
    for (int j = 0; j < 3; ++j) {
        LieElt ej;
        ej.c[j] = 1;
        LieElt ad = lie_log(L, L.group->conj(gi, lie_exp(L, ej)));
        out.coords[j] = lie_pair(L, f, ad);
    }
    return out;
}

CoadOrbit orbit_of(const NilLie& L, const LieFunctional& f) {
    check_lie(L);
    check_coords(L, f.coords);
    std::vector<LieFunctional> points;
    std::deque<LieFunctional> work{f};
    points.push_back(f);
    while (!work.empty()) {
        LieFunctional cur = work.front();
        work.pop_front();
        for (std::uint64_t g : L.group->generators()) {
            LieFunctional next = coad_act(L, g, cur);
            if (std::find(points.begin(), points.end(), next) == points.end()) {
                points.push_back(next);
                work.push_back(next);
            }
        }
    }
    std::sort(points.begin(), points.end());
    return {std::move(points), f};
}

std::vector<CoadOrbit> coad_orbits(const NilLie& L) {
    check_lie(L);
    const std::uint32_t q = base_field(L)->q;
    std::vector<CoadOrbit> orbits;
    std::vector<bool> seen(static_cast<std::size_t>(q) * q * q, false);
    auto code = [q](const LieFunctional& f) {
        return (static_cast<std::size_t>(f.coords[0]) * q + f.coords[1]) * q + f.coords[2];
    };
    LieFunctional f;
    for (f.coords[0] = 0; f.coords[0] < q; ++f.coords[0])
        for (f.coords[1] = 0; f.coords[1] < q; ++f.coords[1])
            for (f.coords[2] = 0; f.coords[2] < q; ++f.coords[2]) {
                if (seen[code(f)]) continue;
                CoadOrbit o = orbit_of(L, f);
                for (const LieFunctional& pt : o.points) seen[code(pt)] = true;
                orbits.push_back(std::move(o));
            }
    return orbits;
}

ClassFn orbit_char(const NilLie& L, const CoadOrbit& o) {
    check_lie(L);
    require(!o.points.empty(), ErrorKind::InvalidArgument, "empty orbit");
    CoadOrbit closed = orbit_of(L, o.base);
    std::vector<LieFunctional> given = o.points;
    std::sort(given.begin(), given.end());
    require(given == closed.points, ErrorKind::InvalidArgument,
            "the point set is not the coadjoint orbit of its base");

    long n = static_cast<long>(o.points.size());
    long r = 1;
    while (r * r < n) ++r;
    require(r * r == n, ErrorKind::InvalidArgument,
            "orbit size is not a perfect square, so the normalization is irrational");

    const FqDesc* k = base_field(L);
    Rat scale = rat(Int(1), Int(r));
    auto fn = [&](std::uint64_t g) {
        LieElt x = lie_log(L, g);
        Cyc acc = Cyc::zero(1);
        for (const LieFunctional& f : o.points) acc += add_char_eval(k, 1, lie_pair(L, f, x));
        return acc * scale;
    };
    try {
        return from_pointwise(L.group, fn, "orbit" + functional_str(o.base));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotAClassFunction)
            fail(ErrorKind::Internal,
                 std::string("orbit sum failed the class-function check: ") + e.what());
        throw;
    }
}

VerificationReport verify_kirillov_bijection(const NilLie& L) {
    check_lie(L);
    VerificationReport rep;
    rep.suite = "heisenberg";
    rep.params = {{"q", base_field(L)->q}};

    std::vector<CoadOrbit> orbits = coad_orbits(L);
    std::vector<ClassFn> chars;
    chars.reserve(orbits.size());
    for (const CoadOrbit& o : orbits) chars.push_back(orbit_char(L, o));

    {
        long total = 0;
        for (const CoadOrbit& o : orbits) total += static_cast<long>(o.points.size());
        bool ok = total == L.group->order();
        rep.add("orbit sizes partition the functionals", ok,
                ok ? "" : "sizes sum to " + std::to_string(total));
    }
    {
        bool ok = true;
        std::string witness;
        for (std::size_t i = 0; ok && i < chars.size(); ++i) {
            Cyc n = inner(chars[i], chars[i]);
            if (n != Cyc::one(1)) {
                ok = false;
                witness = chars[i].label + " has norm " + n.to_string();
            }
        }
        rep.add("orbit characters have norm 1", ok, witness);
    }
    {
        bool ok = true;
        std::string witness;
        for (std::size_t i = 0; ok && i < chars.size(); ++i)
            for (std::size_t j = i + 1; ok && j < chars.size(); ++j) {
                Cyc v = inner(chars[i], chars[j]);
                if (!v.is_zero()) {
                    ok = false;
                    witness = "<" + chars[i].label + ", " + chars[j].label + "> = " + v.to_string();
                }
            }
        rep.add("orbit characters are pairwise orthogonal", ok, witness);
    }
    {
        std::size_t nc = L.group->classes().count();
        bool ok = chars.size() == nc;
        rep.add("orbit count equals the class number", ok,
                ok ? ""
                   : std::to_string(chars.size()) + " orbits vs " + std::to_string(nc) +
                         " classes");
    }
    {
        Cyc sum = Cyc::zero(1);
        for (const ClassFn& c : chars) {
            Cyc d = c.degree();
            sum += d * d;
        }
        bool ok = sum == Cyc(1, Rat(L.group->order()));
        rep.add("squared degrees sum to the group order", ok, ok ? "" : sum.to_string());
    }
    return rep;
}

nlohmann::json orbits_to_json(const NilLie& L, const std::vector<CoadOrbit>& orbits) {
    nlohmann::json j;
    j["q"] = base_field(L)->q;
    j["orbits"] = nlohmann::json::array();
    for (const CoadOrbit& o : orbits) {
        nlohmann::json oj;
        oj["base"] = o.base.coords;
        oj["size"] = o.points.size();
        nlohmann::json pts = nlohmann::json::array();
        for (const LieFunctional& f : o.points) pts.push_back(f.coords);
        oj["points"] = std::move(pts);
        j["orbits"].push_back(std::move(oj));
    }
    return j;
}

} // namespace charfn
