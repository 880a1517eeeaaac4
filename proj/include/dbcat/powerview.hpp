#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "dbcat/instance.hpp"
#include "dbcat/query.hpp"

namespace dbcat {

/// Enumeration bound for T. depth < 0 means "run to the true fixpoint".
struct Bound {
    int depth = 2;
    std::size_t max_arity = 4;
    std::size_t view_cap = 100000;

    static Bound fixpoint(std::size_t max_arity, std::size_t view_cap = 100000) {
        return Bound{-1, max_arity, view_cap};
    }
    bool unbounded() const noexcept { return depth < 0; }
    std::string to_string() const;
    auto operator<=>(const Bound&) const = default;
};

/// Dense coding of a finite value set: tuples pack into one 64-bit word with
/// column 0 in the high bits, so packed order is tuple order.
class Domain {
public:
    explicit Domain(std::vector<Value> sorted_values);

    const std::vector<Value>& values() const noexcept { return values_; }
    unsigned bits() const noexcept { return bits_; }
    std::size_t max_arity() const noexcept { return 64 / bits_; }
    std::uint64_t code(const Value& v) const;
    const Value& value(std::uint64_t code) const { return values_.at(code); }
    std::uint64_t pack(const Tuple& t) const;
    Tuple unpack(std::uint64_t row, std::size_t arity) const;
    std::uint64_t column(std::uint64_t row, std::size_t arity, std::size_t k) const {
        return (row >> ((arity - 1 - k) * bits_)) & mask_;
    }

    bool operator==(const Domain& o) const { return values_ == o.values_; }

private:
    std::vector<Value> values_;
    unsigned bits_ = 1;
    std::uint64_t mask_ = 1;
};

struct PackedView {
    std::size_t arity = 0;
    std::vector<std::uint64_t> rows;

    auto operator<=>(const PackedView&) const = default;
};

/// One closed family of views over a single component: extensions only
/// (names erased), each with one witnessing term. ⊥ is always a member and is
/// never stored.
class ViewFamily {
public:
    ViewFamily() = default;
    ViewFamily(std::shared_ptr<const Domain> domain, std::vector<PackedView> views,
               std::vector<QueryTermPtr> witnesses, bool fixpoint);

    const std::shared_ptr<const Domain>& domain() const noexcept { return domain_; }
    const std::vector<PackedView>& views() const noexcept { return views_; }
    const std::vector<QueryTermPtr>& witnesses() const noexcept { return witnesses_; }
    bool fixpoint() const noexcept { return fixpoint_; }
    /// Stored views, not counting ⊥.
    std::size_t size() const noexcept { return views_.size(); }
    bool only_bottom() const noexcept { return views_.empty(); }

    /// True for ⊥ (any empty tuple set) and for stored extensions.
    bool contains(const std::set<Tuple>& extension, std::size_t arity) const;
    bool contains(const Relation& r) const { return contains(r.tuples(), r.arity()); }
    QueryTermPtr witness(const std::set<Tuple>& extension, std::size_t arity) const;
    std::vector<std::pair<std::size_t, std::set<Tuple>>> extensions() const;

    bool operator==(const ViewFamily& o) const;
    bool subset_of(const ViewFamily& o) const;

    static ViewFamily intersect(const ViewFamily& a, const ViewFamily& b);
    static ViewFamily unite(const ViewFamily& a, const ViewFamily& b);

private:
    std::shared_ptr<const Domain> domain_;
    std::vector<PackedView> views_;
    std::vector<QueryTermPtr> witnesses_;
    bool fixpoint_ = true;
};

/// T-closure of an explicit set of base views. Throws BudgetExceeded when the
/// family outgrows the view cap or the packed row width.
ViewFamily close_views(const std::vector<Relation>& base, const Bound& bound);

/// TA: one family per component of A (no view reads two components).
class ViewSet {
public:
    ViewSet() = default;
    ViewSet(Bound bound, std::map<ComponentId, ViewFamily> blocks);

    const Bound& bound() const noexcept { return bound_; }
    const std::map<ComponentId, ViewFamily>& blocks() const noexcept { return blocks_; }
    bool fixpoint() const;
    /// Number of views including ⊥.
    std::size_t size() const;
    bool contains(const Relation& r) const;
    bool only_bottom() const { return blocks_.empty(); }

    /// All blocks merged into one untagged family.
    ViewFamily flattened() const;
    /// Materializes every view as a relation v1..vn, keeping block ids as the partition.
    Instance to_instance() const;
    /// Sorted, one view per line, `[component] {tuples}`.
    std::string serialize() const;

    /// Tagged equality: same component ids, equal blocks.
    bool operator==(const ViewSet& o) const { return blocks_ == o.blocks_; }

private:
    Bound bound_;
    std::map<ComponentId, ViewFamily> blocks_;
};

ViewSet power_view(const Instance& a, const Bound& bound);

/// TA = TB up to relabelling of component ids (multiset of blocks).
bool isomorphic(const ViewSet& a, const ViewSet& b);

struct IsoResult {
    bool isomorphic = false;
    /// Both sides reached a true fixpoint.
    bool exact = false;
};

IsoResult compare_instances(const Instance& a, const Instance& b, const Bound& bound);
bool instances_isomorphic(const Instance& a, const Instance& b, const Bound& bound);

/// TA ⊎ TB with B's blocks shifted past A's, as in disjoint_union.
ViewSet tagged_union(const ViewSet& a, const ViewSet& b);

/// A ⊗ B = TA ∩ TB (untagged).
ViewSet matching(const Instance& a, const Instance& b, const Bound& bound);
/// A ⊕ B = T(A ⊎ B).
ViewSet merging(const Instance& a, const Instance& b, const Bound& bound);

}  // namespace dbcat
