#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dbcat/instance.hpp"

namespace dbcat {

/// One conjunct of a selection: `column op column'` or `column op constant`.
struct Condition {
    enum class Op { Eq, Le, Ge };
    Op op = Op::Eq;
    std::size_t column = 0;
    std::variant<std::size_t, Value> rhs;

    bool operator==(const Condition&) const = default;
};

class QueryTerm;
using QueryTermPtr = std::shared_ptr<const QueryTerm>;

/// An SPJRU term. Nodes are immutable and shared; arity is fixed at
/// construction, so column indices are validated eagerly.
class QueryTerm {
public:
    enum class Kind { Base, Bottom, Select, Project, Join, Rename, Union };

    static QueryTermPtr base(std::string relation, std::size_t arity);
    /// The empty view ⊥ at the given arity.
    static QueryTermPtr bottom(std::size_t arity = 0);
    static QueryTermPtr select(QueryTermPtr child, std::vector<Condition> conditions);
    static QueryTermPtr project(QueryTermPtr child, std::vector<std::size_t> columns);
    /// Keeps all columns of both sides; `pairs` are (left column, right column) equalities.
    static QueryTermPtr join(QueryTermPtr left, QueryTermPtr right,
                             std::vector<std::pair<std::size_t, std::size_t>> pairs = {});
    /// Output column i is input column permutation[i].
    static QueryTermPtr rename(QueryTermPtr child, std::vector<std::size_t> permutation);
    static QueryTermPtr unite(QueryTermPtr left, QueryTermPtr right);

    Kind kind() const noexcept { return kind_; }
    std::size_t arity() const noexcept { return arity_; }
    const std::string& relation() const noexcept { return relation_; }
    const QueryTermPtr& left() const noexcept { return left_; }
    const QueryTermPtr& right() const noexcept { return right_; }
    const std::vector<Condition>& conditions() const noexcept { return conditions_; }
    const std::vector<std::size_t>& columns() const noexcept { return columns_; }
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const noexcept { return pairs_; }

    /// Relation names read by the term.
    std::set<std::string> base_relations() const;
    std::size_t depth() const;
    std::string to_string() const;

private:
    QueryTerm() = default;

    Kind kind_ = Kind::Bottom;
    std::size_t arity_ = 0;
    std::string relation_;
    QueryTermPtr left_;
    QueryTermPtr right_;
    std::vector<Condition> conditions_;
    std::vector<std::size_t> columns_;
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

bool holds(const Condition& c, const Tuple& t);

/// Set-semantics evaluation. Throws MalformedQuery for unknown names or arity
/// mismatches, CrossComponentQuery when the term reads several components.
Relation eval_spjru(const QueryTerm& t, const Instance& a, std::string result_name = "q");

/// Throws CrossComponentQuery unless all names lie in one component of `a`.
ComponentId require_single_component(const std::set<std::string>& names, const Instance& a);

}  // namespace dbcat
