#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dbcat/rule.hpp"

namespace dbcat {

/// ∀x (∃y φ(x,y) ⇒ ∃z ψ(x,z)). y and z are derived from the variables of the
/// two sides that are not universal.
struct Tgd {
    std::vector<std::string> universal;
    Conjunction left;
    Conjunction right;

    std::vector<std::string> left_existential() const;
    std::vector<std::string> right_existential() const;
    /// No z, and every y occurs at most once on the left.
    bool weakly_full() const;
    void validate() const;
    std::string to_string() const;
    bool operator==(const Tgd&) const = default;
};

/// ∀x (φ(x) ⇒ x₁ = x₂).
struct Egd {
    Conjunction body;
    std::string left;
    std::string right;

    void validate() const;
    std::string to_string() const;
    bool operator==(const Egd&) const = default;
};

/// A yes/no query `:- body`, satisfied iff the body has a valuation.
struct BooleanQuery {
    Conjunction body;

    void validate() const;
    std::string to_string() const;
    bool operator==(const BooleanQuery&) const = default;
};

using Constraint = std::variant<Tgd, Egd, BooleanQuery>;
using Sentence = std::vector<Constraint>;

std::string to_string(const Constraint& c);
void validate(const Constraint& c);

struct Violation {
    std::size_t index = 0;
    std::string constraint;
    Valuation witness;
};

std::optional<Valuation> tgd_violation(const Tgd& t, const Instance& a);
std::optional<Valuation> egd_violation(const Egd& e, const Instance& a);
bool check_tgd(const Tgd& t, const Instance& a);
bool check_egd(const Egd& e, const Instance& a);
bool check_boolean(const BooleanQuery& b, const Instance& a);

/// First violated member of `s`, if any.
std::optional<Violation> sentence_violation(const Sentence& s, const Instance& a);
bool check_sentence(const Sentence& s, const Instance& a);

/// ∀x (∃y (c(x,y) ∧ y = #A) ⇒ ∃z (c(x,z) ∧ z = #B)) for a relation c of arity k+1.
Tgd sentinel_tgd(const std::string& relation, std::size_t k);

}  // namespace dbcat
