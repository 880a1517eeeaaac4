#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dbcat/constraint.hpp"
#include "dbcat/morphism.hpp"

namespace dbcat {

/// A = (S_A, Σ_A).
struct Schema {
    std::string name;
    std::map<std::string, std::size_t> relations;
    Sentence constraints;

    /// Throws SchemaError: unknown relation or arity in a constraint, or a tgd
    /// that is not weakly full.
    void validate() const;
    bool operator==(const Schema&) const = default;
};

class SchemaTerm;
using SchemaTermPtr = std::shared_ptr<const SchemaTerm>;

/// Atom | Sep (†) | Fed (⊕) | Empty (A_∅).
class SchemaTerm {
public:
    enum class Kind { Atom, Sep, Fed, Empty };

    static SchemaTermPtr atom(std::shared_ptr<const Schema> schema);
    static SchemaTermPtr atom(Schema schema) { return atom(std::make_shared<const Schema>(std::move(schema))); }
    static SchemaTermPtr sep(SchemaTermPtr a, SchemaTermPtr b);
    static SchemaTermPtr fed(SchemaTermPtr a, SchemaTermPtr b);
    static SchemaTermPtr empty();

    Kind kind() const noexcept { return kind_; }
    const std::shared_ptr<const Schema>& schema() const noexcept { return schema_; }
    const SchemaTermPtr& left() const noexcept { return left_; }
    const SchemaTermPtr& right() const noexcept { return right_; }

    std::vector<std::shared_ptr<const Schema>> leaves() const;
    std::size_t depth() const;
    /// DSL form; `sep`/`fed` are left-associative with equal precedence.
    std::string to_string() const;

    /// π₁ after normalization: `Leaf.rel/arity` for every leaf relation.
    std::set<std::string> qualified_relations() const;
    /// π₂ after normalization: `Leaf: constraint` for every leaf constraint.
    std::set<std::string> qualified_constraints() const;

private:
    SchemaTerm() = default;

    Kind kind_ = Kind::Empty;
    std::shared_ptr<const Schema> schema_;
    SchemaTermPtr left_;
    SchemaTermPtr right_;
};

/// A = B iff π₁(A) = π₁(B) and π₂(A) = π₂(B).
bool schema_identical(const SchemaTerm& a, const SchemaTerm& b);

/// The relation names, arities and partition an interpretation of `t` has,
/// as an instance with empty relations, plus Σ renamed to those names.
struct Flattened {
    Instance skeleton;
    Sentence constraints;
};
Flattened flatten(const SchemaTerm& t);

Sentence rename_relations(const Sentence& s, const std::map<std::string, std::string>& names);
ConjunctiveRule rename_relations(const ConjunctiveRule& q, const std::map<std::string, std::string>& names);

/// One q_A(x) ⇒ q_B(x) pair of a view-based mapping.
struct MappingPair {
    enum class Kind {
        Direct,  // q_B is an atom over an existing target relation
        Fresh,   // case 1: q_B names a relation γ adds to the target
        Helper,  // case 2: q_B is a query over the target (head `_`)
    };

    ConjunctiveRule source_query;
    Kind kind = Kind::Direct;
    /// Direct: the atom; Fresh and Helper: the target-side rule.
    Atom target_atom;
    ConjunctiveRule target_query;

    std::string to_string() const;
    bool operator==(const MappingPair&) const = default;
};

struct SchemaMapping {
    std::string name;
    SchemaTermPtr source;
    SchemaTermPtr target;
    std::vector<MappingPair> pairs;
    bool exact = false;
};

/// Classifies a bare-atom right-hand side against the target's relation names.
MappingPair make_pair(ConjunctiveRule source_query, Atom target_atom, const std::set<std::string>& target_relations);
/// Classifies a rule right-hand side: head `_` is case 2, any other head case 1.
MappingPair make_pair(ConjunctiveRule source_query, ConjunctiveRule target_query,
                      const std::set<std::string>& target_relations);

/// A sequential path M_k ; … ; M_1 in the mapping graph (empty = identity at `source`).
struct GraphPath {
    SchemaTermPtr source;
    SchemaTermPtr target;
    std::vector<std::string> steps;  // applied first to last

    bool operator==(const GraphPath& o) const;
};

GraphPath path_of(const SchemaMapping& m);
GraphPath identity_path(SchemaTermPtr node);
/// second ; first. Throws CompositionMismatch on an endpoint mismatch.
GraphPath seq_compose(const GraphPath& second, const GraphPath& first);

/// M₂ ⊎ M₁ : A → B † C with the pairs retargeted into the separated composite.
SchemaMapping branch(const SchemaMapping& m1, const SchemaMapping& m2, std::string name = {});

struct MappingGraph {
    std::string name;
    std::vector<SchemaMapping> mappings;
    std::vector<GraphPath> compositions;

    /// Distinct endpoint terms in order of first appearance.
    std::vector<SchemaTermPtr> nodes() const;
    const SchemaMapping& mapping(const std::string& name) const;
};

/// A relation γ adds to a target object (case 1).
struct GammaRelation {
    std::string name;
    std::size_t arity = 0;
    /// Defining rule over the target; none for a bare fresh atom.
    std::optional<ConjunctiveRule> definition;
    ComponentId component = 0;
};

struct SketchObject {
    enum class Kind { Node, Helper, Empty };

    Kind kind = Kind::Node;
    std::string name;
    SchemaTermPtr term;
    std::vector<GammaRelation> added;
    // Helper objects: c_i(x, y) fed by q_A from `helper_source` and q_B from `helper_target`.
    std::string helper_relation;
    std::size_t helper_k = 0;
    std::size_t helper_source = 0;
    std::size_t helper_target = 0;
    ConjunctiveRule helper_source_query;
    ConjunctiveRule helper_target_query;
    Sentence constraints;
};

struct SketchArrow {
    enum class Kind { Identity, Mapping, Helper, Sentence };

    Kind kind = Kind::Identity;
    std::string name;
    std::size_t source = 0;
    std::size_t target = 0;
    std::vector<ViewMap> viewmaps;
    Sentence sentence;
};

/// Sch(G) = (graph, u, D, C) with D = C = ∅.
struct Sketch {
    std::vector<SketchObject> objects;
    std::vector<SketchArrow> arrows;
    /// u: object index → its identity arrow index.
    std::map<std::size_t, std::size_t> identity;
    std::vector<std::string> diagrams;
    std::vector<std::string> cones;

    std::size_t empty_object() const { return 0; }
    std::optional<std::size_t> find_object(const std::string& name) const;
    /// At most one non-identity arrow between any ordered pair of objects.
    bool at_most_one_arrow() const;
};

Sketch build_sketch(const MappingGraph& g);

}  // namespace dbcat
