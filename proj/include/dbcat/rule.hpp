#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dbcat/instance.hpp"
#include "dbcat/query.hpp"

namespace dbcat {

/// A variable or a constant in an atom argument position.
struct Term {
    bool is_variable = false;
    std::string variable;
    Value constant;

    static Term var(std::string name) { return Term{true, std::move(name), {}}; }
    static Term value(Value v) { return Term{false, {}, std::move(v)}; }

    std::string to_string() const { return is_variable ? variable : constant.to_string(); }
    bool operator==(const Term&) const = default;
};

struct Atom {
    std::string relation;
    std::vector<Term> args;

    std::string to_string() const;
    bool operator==(const Atom&) const = default;
};

/// Built-in predicate `lhs = rhs` or `lhs <= rhs`.
struct Comparison {
    enum class Op { Eq, Le };
    Op op = Op::Eq;
    Term lhs;
    Term rhs;

    std::string to_string() const;
    bool operator==(const Comparison&) const = default;
};

/// A conjunction of relational atoms and built-ins.
struct Conjunction {
    std::vector<Atom> atoms;
    std::vector<Comparison> comparisons;

    std::set<std::string> variables() const;
    /// Variables that occur in at least one relational atom.
    std::set<std::string> atom_variables() const;
    std::set<std::string> relations() const;
    std::string to_string() const;
    bool empty() const { return atoms.empty() && comparisons.empty(); }
    bool operator==(const Conjunction&) const = default;
};

using Valuation = std::map<std::string, Value>;

std::string to_string(const Valuation& v);

/// `head(vars) :- body`. Rules are safe: every variable occurs in a
/// relational body atom.
struct ConjunctiveRule {
    std::string head_name = "q";
    std::vector<std::string> head;
    Conjunction body;

    /// Throws MalformedQuery when the rule is unsafe or has no relational atom.
    void validate() const;
    std::string to_string() const;
    bool operator==(const ConjunctiveRule&) const = default;
};

/// Enumerates every extension of `start` to the variables of `c` that makes
/// all of `c` true over `a`. Variables confined to built-ins range over
/// `free_domain`. The callback returns false to stop. Returns false iff stopped.
bool for_each_valuation(const Conjunction& c, const Instance& a, const Valuation& start,
                        const std::set<Value>& free_domain, const std::function<bool(const Valuation&)>& visit);

bool satisfiable(const Conjunction& c, const Instance& a, const Valuation& start = {});

/// ‖q‖ over `a`. Throws CrossComponentQuery when body atoms span components.
Relation eval_rule(const ConjunctiveRule& q, const Instance& a);

/// An SPJRU term equivalent to `q` on every instance.
QueryTermPtr rule_to_spjru(const ConjunctiveRule& q);

}  // namespace dbcat
