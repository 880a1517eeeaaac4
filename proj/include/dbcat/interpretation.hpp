#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dbcat/morphism.hpp"
#include "dbcat/report.hpp"
#include "dbcat/schema.hpp"

namespace dbcat {

/// α: atomic schema name → instance.
class Interpretation {
public:
    /// Throws InvalidInstance when `a` uses relations or arities outside `s`
    /// or holds a reserved sentinel. Missing relations are added empty.
    void assign(const Schema& s, const Instance& a);

    bool assigned(const std::string& schema) const { return assignment_.contains(schema); }
    const Instance& at(const std::string& schema) const;
    const std::map<std::string, Instance>& assignment() const noexcept { return assignment_; }

private:
    std::map<std::string, Instance> assignment_;
};

/// α*(t): Atom ↦ α(A), Empty ↦ ⊥⁰, Fed ↦ ⊎, Sep ↦ +.
Instance interpret_term(const Interpretation& alpha, const SchemaTerm& t);

/// α* of a sketch object: the γ-enlarged node, a helper's sentinel-tagged
/// relation, or ⊥⁰ for A_∅.
Instance interpret_object(const Interpretation& alpha, const Sketch& s, std::size_t object);

/// α* on every object, from instances chosen for the node terms.
std::vector<Instance> interpret_objects(const Sketch& s, const std::function<Instance(const SchemaTerm&)>& node);

/// Lines `SCHEMA <node>`, `HELPER <C_i>` and `ARROW <arrow>`.
struct ModelReport {
    Report report;
    bool is_model = false;
};

ModelReport check_model(const Interpretation& alpha, const MappingGraph& g, const Sketch& s);

/// Image of a sketch arrow; `morphism` is empty when the view-map conditions fail.
struct ArrowImage {
    std::optional<Morphism> morphism;
    std::string problem;
};

ArrowImage interpret_arrow(const Interpretation& alpha, const Sketch& s, std::size_t arrow, const ModelReport& report);

/// Identities, endpoints, sentence fluxes, unit laws and composable pairs of
/// α*: Sch(G) → DB at the given bound.
Report check_functor(const Interpretation& alpha, const Sketch& s, const Bound& bound);

/// Associativity and flux laws over all composable pairs and triples of valid images.
Report check_laws(const Interpretation& alpha, const Sketch& s, const Bound& bound);

/// α*(A) ≃ α*(γ(A)).
bool check_gamma_iso(const Interpretation& alpha, const SchemaTerm& a, const Sketch& s, const Bound& bound);

}  // namespace dbcat
