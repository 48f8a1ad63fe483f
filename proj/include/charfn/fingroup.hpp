#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "charfn/gf.hpp"
#include "charfn/ringa.hpp"

namespace charfn {

// Table-backed commutative coefficient ring: just enough structure for
// matrix groups with entries in a finite field or a truncated ring.
class CoeffRing {
public:
    static CoeffRing from_field(const FqDesc* f);
    static CoeffRing from_ar(const ARDesc* d);

    long size() const { return size_; }
    std::uint32_t add(std::uint32_t x, std::uint32_t y) const { return add_[idx(x, y)]; }
    std::uint32_t mul(std::uint32_t x, std::uint32_t y) const { return mul_[idx(x, y)]; }
    std::uint32_t neg(std::uint32_t x) const { return neg_[x]; }
    std::uint32_t sub(std::uint32_t x, std::uint32_t y) const { return add(x, neg(y)); }
    bool is_unit(std::uint32_t x) const { return inv_[x] >= 0; }
    std::uint32_t inv(std::uint32_t x) const; // not-a-unit error on non-units
    // one application of the ground-field Frobenius; identity for plain fields
    std::uint32_t frobq(std::uint32_t x) const { return frob_[x]; }
    std::string to_string(std::uint32_t x) const { return print_(x); }

    const FqDesc* field = nullptr; // set when field-backed
    const ARDesc* ar = nullptr;    // set when ring-backed

private:
    std::size_t idx(std::uint32_t x, std::uint32_t y) const {
        return static_cast<std::size_t>(x) * size_ + y;
    }
    long size_ = 0;
    std::vector<std::uint32_t> add_, mul_, frob_;
    std::vector<std::uint32_t> neg_;
    std::vector<std::int32_t> inv_;
    std::function<std::string(std::uint32_t)> print_;
};

enum class GroupKind { heisenberg, u4, axb, gl2ar, subgroup };
const char* group_kind_name(GroupKind k);

struct ConjClasses {
    std::vector<std::uint64_t> representatives; // minimal member, ascending
    std::vector<long> sizes;
    std::unordered_map<std::uint64_t, std::uint32_t> index_of;
    std::vector<std::vector<std::uint64_t>> members; // sorted within a class

    std::size_t count() const { return representatives.size(); }
};

class Group;
using GroupPtr = std::shared_ptr<const Group>;

// A finite matrix group over a CoeffRing.  Elements are packed codes: the
// n*n entries row-major in mixed radix base |ring|, first entry most
// significant, so numeric order on codes is lexicographic order on
// matrices.  The element list is ascending.
class Group {
public:
    GroupKind kind = GroupKind::subgroup;
    int n = 0; // matrix dimension
    CoeffRing ring;
    nlohmann::json params; // reported by the CLI

    const std::vector<std::uint64_t>& elements() const { return elements_; }
    long order() const { return static_cast<long>(elements_.size()); }
    bool contains(std::uint64_t g) const { return index_.count(g) > 0; }
    std::uint32_t index_of(std::uint64_t g) const;
    std::uint64_t id() const { return id_; }

    std::uint64_t mul(std::uint64_t g, std::uint64_t h) const;
    std::uint64_t inv(std::uint64_t g) const;
    std::uint64_t conj(std::uint64_t h, std::uint64_t g) const; // h g h^{-1}
    std::uint64_t pow(std::uint64_t g, long e) const;
    std::uint64_t frobq(std::uint64_t g, int times = 1) const; // entrywise

    std::uint32_t entry(std::uint64_t g, int i, int j) const;
    std::uint64_t pack(const std::vector<std::uint32_t>& entries) const;
    std::vector<std::uint32_t> unpack(std::uint64_t g) const;
    // membership-checked variant of pack
    std::uint64_t from_entries(const std::vector<std::uint32_t>& entries) const;

    // kind-specific tuple view ([a,b,c], [a,b,c,d], [a,b], or the four
    // ring entries for 2x2 kinds); round-trips with the matrix form
    std::vector<std::uint32_t> coords(std::uint64_t g) const;
    std::uint64_t from_coords(const std::vector<std::uint32_t>& t) const;

    const std::vector<std::uint64_t>& generators() const; // greedy, lazy
    const ConjClasses& classes() const;                   // lazy
    std::string to_string(std::uint64_t g) const;

    friend GroupPtr make_heisenberg(const FqDesc* f);
    friend GroupPtr make_u4(const FqDesc* f);
    friend GroupPtr make_axb(const FqDesc* f);
    friend GroupPtr make_gl2ar(const FqDesc* ground, int m, int r);
    friend GroupPtr subgroup_where(const GroupPtr& g,
                                   const std::function<bool(std::uint64_t)>& pred);

private:
    Group() = default;
    void finish(std::vector<std::uint64_t> elems); // sort, index, closure check

    GroupKind coord_kind_ = GroupKind::subgroup; // tuple-view dispatch
    std::vector<std::uint64_t> elements_;
    std::unordered_map<std::uint64_t, std::uint32_t> index_;
    std::uint64_t id_ = 0;

    mutable std::mutex lazy_mu_;
    mutable std::optional<std::vector<std::uint64_t>> gens_;
    mutable std::optional<ConjClasses> classes_;
};

GroupPtr make_heisenberg(const FqDesc* f); // p odd, order q^3
GroupPtr make_u4(const FqDesc* f);         // p = 2, order q^4
GroupPtr make_axb(const FqDesc* f);        // order q(q-1)
// GL_2 of the truncated ring A_r over F_{q^m} with ground field `ground`
GroupPtr make_gl2ar(const FqDesc* ground, int m, int r = 2);
GroupPtr make_borel(const GroupPtr& g); // upper triangular in a gl2ar group
GroupPtr make_torus(const GroupPtr& g); // diagonal in a gl2ar group

// Closure-checked subset; not-a-subgroup error when the predicate subset
// is not closed under the group law.
GroupPtr subgroup_where(const GroupPtr& g, const std::function<bool(std::uint64_t)>& pred);
GroupPtr center(const GroupPtr& g);
long centralizer_order(const Group& g, std::uint64_t x);

// Exhaustive check that f respects products and lands in h.
bool is_group_hom(const Group& g, const Group& h,
                  const std::function<std::uint64_t(std::uint64_t)>& f);

nlohmann::json group_info_json(const Group& g);

} // namespace charfn
