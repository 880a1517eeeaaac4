#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dbcat/value.hpp"

namespace dbcat {

/// Name of the distinguished empty relation ⊥.
inline constexpr std::string_view kBottomName = "⊥";

using ComponentId = int;

/// A finite named relation under set semantics. Columns are addressed by
/// position; attribute names are carried for display only.
class Relation {
public:
    Relation() = default;
    Relation(std::string name, std::size_t arity, std::set<Tuple> tuples = {},
             std::vector<std::string> attributes = {});

    /// The distinguished empty relation ⊥ (canonical arity 0).
    static Relation bottom();

    const std::string& name() const noexcept { return name_; }
    std::size_t arity() const noexcept { return arity_; }
    const std::vector<std::string>& attributes() const noexcept { return attributes_; }
    const std::set<Tuple>& tuples() const noexcept { return tuples_; }
    std::size_t size() const noexcept { return tuples_.size(); }
    bool empty() const noexcept { return tuples_.empty(); }
    bool contains(const Tuple& t) const { return tuples_.contains(t); }
    bool is_bottom() const noexcept { return name_ == kBottomName; }

    Relation renamed(std::string name) const;

    bool operator==(const Relation&) const = default;

private:
    std::string name_;
    std::size_t arity_ = 0;
    std::vector<std::string> attributes_;
    std::set<Tuple> tuples_;
};

/// A finite database object: relations keyed by name plus a component
/// partition. Relations sharing a component id live in one DBMS; distinct ids
/// are mutually separated. Unpartitioned instances use component 0.
class Instance {
public:
    Instance() = default;
    explicit Instance(std::vector<Relation> relations, std::map<std::string, ComponentId> partition = {});

    /// ⊥⁰: the instance holding only ⊥.
    static Instance bottom();

    const std::map<std::string, Relation>& relations() const noexcept { return relations_; }
    const std::map<std::string, ComponentId>& partition() const noexcept { return partition_; }

    bool has_relation(std::string_view name) const;
    const Relation& relation(std::string_view name) const;
    ComponentId component_of(std::string_view name) const;

    /// Distinct component ids in ascending order.
    std::vector<ComponentId> components() const;
    bool is_partitioned() const { return components().size() > 1; }
    /// Relations of one component (partition ids preserved).
    Instance component(ComponentId id) const;

    std::size_t max_arity() const;
    std::size_t tuple_count() const;

    bool operator==(const Instance&) const = default;

private:
    std::map<std::string, Relation> relations_;
    std::map<std::string, ComponentId> partition_;
};

/// Result of a union together with how operand names/components were mapped.
struct UnionResult {
    Instance instance;
    std::map<std::string, std::string> left_names;
    std::map<std::string, std::string> right_names;
    std::map<ComponentId, ComponentId> left_components;
    std::map<ComponentId, ComponentId> right_components;
};

/// A + B. Components of A become 1..k, those of B k+1..k+l; names present on
/// both sides are qualified as `name#<component>`.
UnionResult disjoint_union_mapped(const Instance& a, const Instance& b);
Instance disjoint_union(const Instance& a, const Instance& b);

/// A ⊎ B under one DBMS: everything lands in component 0; colliding names are
/// qualified as `name#1` (left) and `name#2` (right).
UnionResult federated_union_mapped(const Instance& a, const Instance& b);
Instance federated_union(const Instance& a, const Instance& b);

/// True iff every relation of the instance has zero tuples.
bool is_empty_isomorphic(const Instance& a);

std::set<Value> active_domain(const Instance& a);

}  // namespace dbcat
