#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dbcat/powerview.hpp"
#include "dbcat/report.hpp"
#include "dbcat/rule.hpp"

namespace dbcat {

/// q_i : A → {r_i}. The query's head columns land on `target_columns` of the
/// target relation (all columns in order when empty); `target_fixed` pins the
/// remaining target columns to constants.
struct ViewMap {
    enum class Mode { Inclusion, Exact };

    ConjunctiveRule query;
    std::string target;
    std::vector<std::size_t> target_columns;
    std::vector<std::pair<std::size_t, Value>> target_fixed;
    Mode mode = Mode::Inclusion;

    /// ∂₀: source relation names read by the query.
    std::set<std::string> sources() const { return query.body.relations(); }
    std::string to_string() const;
    bool operator==(const ViewMap&) const = default;
};

struct Tree;

/// One ∂₀ entry of a tree node.
struct Input {
    enum class State { Source, Hidden, Fed };

    std::string relation;
    State state = State::Source;
    /// The intermediate object a hidden relation belongs to.
    std::shared_ptr<const Instance> owner;
    /// Upstream trees whose ∂₁ is this relation (state Fed).
    std::vector<Tree> feeders;
};

struct Tree {
    ViewMap root;
    std::vector<Input> inputs;

    bool has_hidden() const;
    /// Relation names of the source object read at the leaves.
    std::set<std::string> leaves() const;
    std::string to_string() const;
};

using FluxKey = std::pair<ComponentId, ComponentId>;

/// The information flux f̃: views transmitted from a source component to a
/// target component, one ViewFamily per (source, target) pair. ⊥ is implicit.
class Flux {
public:
    Flux() = default;
    Flux(Bound bound, std::map<FluxKey, ViewFamily> blocks);

    const Bound& bound() const noexcept { return bound_; }
    const std::map<FluxKey, ViewFamily>& blocks() const noexcept { return blocks_; }
    bool only_bottom() const noexcept { return blocks_.empty(); }
    bool fixpoint() const;
    std::size_t size() const;
    bool contains(const Relation& r) const;
    ViewFamily flattened() const;
    std::string serialize() const;

    bool operator==(const Flux& o) const { return blocks_ == o.blocks_; }
    /// Blockwise inclusion.
    bool subset_of(const Flux& o) const;
    /// Each block (s,t) lies in the union of o's blocks leaving s.
    bool subset_by_source(const Flux& o) const;
    /// Each block (s,t) lies in the union of o's blocks entering t.
    bool subset_by_target(const Flux& o) const;
    /// Equality after some bijective relabelling of source and target component ids.
    bool equal_up_to_relabel(const Flux& o) const;

    /// (g∘f)~: f̃(s,m) ∩ g̃(m,t) collected under (s,t).
    static Flux compose(const Flux& inner, const Flux& outer);
    static Flux relabel(const Flux& f, const std::map<ComponentId, ComponentId>& src,
                        const std::map<ComponentId, ComponentId>& dst);
    static Flux unite(const Flux& a, const Flux& b);

private:
    Bound bound_;
    std::map<FluxKey, ViewFamily> blocks_;
};

class Morphism;
using MorphismPtr = std::shared_ptr<const Morphism>;

/// An arrow of DB: a set of view-map trees between two objects.
class Morphism {
public:
    enum class Kind { CArrow, PArrow };

    const Instance& source() const noexcept { return *source_; }
    const Instance& target() const noexcept { return *target_; }
    const std::shared_ptr<const Instance>& source_ptr() const noexcept { return source_; }
    const std::shared_ptr<const Instance>& target_ptr() const noexcept { return target_; }
    const std::vector<Tree>& trees() const noexcept { return trees_; }
    Kind kind() const;
    /// The id_⊥⁰ marker standing for an unsatisfied sentence arrow.
    bool is_marker() const noexcept;

    /// ∂₀(f): leaf relations read from the source.
    std::set<std::string> sources() const;
    /// ∂₁(f): root target relations.
    std::set<std::string> sinks() const;

    Flux flux(const Bound& bound) const;
    std::string to_string() const;

    struct Recipe;

private:
    friend Morphism make_morphism(std::shared_ptr<const Instance>, std::shared_ptr<const Instance>, std::vector<Tree>,
                                  std::shared_ptr<const Recipe>);

    std::shared_ptr<const Instance> source_;
    std::shared_ptr<const Instance> target_;
    std::vector<Tree> trees_;
    std::shared_ptr<const Recipe> recipe_;
    struct Cache;
    std::shared_ptr<Cache> cache_;
};

/// A single-level c-arrow. Throws ModeViolation when some view-map's inclusion
/// (or exact) condition fails on the given instances, MalformedQuery on bad names.
Morphism make_atomic(std::vector<ViewMap> viewmaps, const Instance& a, const Instance& b);
Morphism make_atomic(std::vector<ViewMap> viewmaps, std::shared_ptr<const Instance> a,
                     std::shared_ptr<const Instance> b);

/// g∘f. Throws CompositionMismatch unless target(f) = source(g).
Morphism compose(const Morphism& g, const Morphism& f);

Morphism identity(const Instance& a);
Morphism identity(std::shared_ptr<const Instance> a);
/// ∅ : A → B with ∂₀ = ∂₁ = {⊥}.
Morphism empty_morphism(const Instance& a, const Instance& b);
Morphism empty_morphism(std::shared_ptr<const Instance> a, std::shared_ptr<const Instance> b);
/// id_⊥⁰ used as the image of an unsatisfied sentence arrow.
Morphism marker_morphism();

bool equivalent(const Morphism& f, const Morphism& g, const Bound& bound);
/// f ≈ g after relabelling component ids (objects compared up to ≃).
bool equivalent_up_to_relabel(const Morphism& f, const Morphism& g, const Bound& bound);

enum class Side { Left, Right };

/// f + g : A + B → A′ + B′.
Morphism coproduct_morphism(const Morphism& f, const Morphism& g);
/// in_A : A ↪ A + B (side Left) or in_B : B ↪ A + B (side Right).
Morphism injection(const Instance& a, const Instance& b, Side side);
/// p_A : A + B → A (side Left) or p_B : A + B → B, the injections reversed.
Morphism projection(const Instance& a, const Instance& b, Side side);
/// k : A + B → C with k∘in_A ≈ f and k∘in_B ≈ g.
Morphism mediating(const Morphism& f, const Morphism& g);
/// ⟨f, g⟩ : C → A + B with p_A∘⟨f,g⟩ ≈ f and p_B∘⟨f,g⟩ ≈ g.
Morphism pairing(const Morphism& f, const Morphism& g);

struct DualityLegs {
    std::optional<std::pair<Morphism, Morphism>> coproduct;  // f : A → C, g : B → C
    std::optional<std::pair<Morphism, Morphism>> product;    // f : C → A, g : C → B
};

/// A + B as coproduct and product at once, checked on concrete arrows.
Report verify_duality(const Instance& a, const Instance& b, const Bound& bound, const DualityLegs& legs = {});

}  // namespace dbcat
