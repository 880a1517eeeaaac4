#include "dbcat/morphism.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

#include "dbcat/errors.hpp"

namespace dbcat {

struct Morphism::Recipe {
    enum class Kind { Atomic, Composite, Sum, Empty, Marker };

    Kind kind = Kind::Atomic;
    // Composite: first = outer g, second = inner f. Sum: first = left, second = right.
    MorphismPtr first;
    MorphismPtr second;
    std::map<ComponentId, ComponentId> left_src, left_dst, right_src, right_dst;
};

struct Morphism::Cache {
    std::mutex mutex;
    std::map<Bound, Flux> fluxes;
};

Morphism make_morphism(std::shared_ptr<const Instance> source, std::shared_ptr<const Instance> target,
                       std::vector<Tree> trees, std::shared_ptr<const Morphism::Recipe> recipe) {
    Morphism m;
    m.source_ = std::move(source);
    m.target_ = std::move(target);
    m.trees_ = std::move(trees);
    m.recipe_ = std::move(recipe);
    m.cache_ = std::make_shared<Morphism::Cache>();
    return m;
}

namespace {

using Recipe = Morphism::Recipe;

std::shared_ptr<const Recipe> recipe_of(Recipe::Kind kind) {
    auto r = std::make_shared<Recipe>();
    r->kind = kind;
    return r;
}

std::map<ComponentId, ComponentId> identity_map(const Instance& a) {
    std::map<ComponentId, ComponentId> out;
    for (ComponentId c : a.components()) out[c] = c;
    return out;
}

ComponentId mapped(const std::map<ComponentId, ComponentId>& m, ComponentId c) {
    auto it = m.find(c);
    return it == m.end() ? c : it->second;
}

std::vector<std::size_t> columns_of(const ViewMap& vm) {
    if (!vm.target_columns.empty()) return vm.target_columns;
    std::vector<std::size_t> cols(vm.query.head.size());
    std::iota(cols.begin(), cols.end(), 0);
    return cols;
}

void check_viewmap(const ViewMap& vm, const Instance& a, const Instance& b) {
    vm.query.validate();
    if (vm.query.head.empty()) throw MalformedQuery("view-map query needs a non-empty head");
    for (const std::string& s : vm.sources()) {
        if (!a.has_relation(s)) throw MalformedQuery("view-map reads unknown source relation " + s);
    }
    if (!b.has_relation(vm.target)) throw MalformedQuery("view-map targets unknown relation " + vm.target);
    const Relation& target = b.relation(vm.target);
    std::vector<std::size_t> cols = columns_of(vm);
    if (cols.size() != vm.query.head.size()) throw MalformedQuery("view-map column list differs from head arity");
    std::set<std::size_t> used;
    for (std::size_t c : cols) {
        if (c >= target.arity() || !used.insert(c).second) {
            throw MalformedQuery("view-map column " + std::to_string(c) + " invalid for " + vm.target);
        }
    }
    for (const auto& [c, v] : vm.target_fixed) {
        if (c >= target.arity() || !used.insert(c).second) {
            throw MalformedQuery("view-map fixed column " + std::to_string(c) + " invalid for " + vm.target);
        }
    }

    Relation view = eval_rule(vm.query, a);
    std::set<Tuple> image;
    for (const Tuple& t : target.tuples()) {
        bool keep = std::all_of(vm.target_fixed.begin(), vm.target_fixed.end(),
                                [&](const auto& f) { return t[f.first] == f.second; });
        if (!keep) continue;
        Tuple p;
        for (std::size_t c : cols) p.push_back(t[c]);
        image.insert(std::move(p));
    }
    for (const Tuple& t : view.tuples()) {
        if (!image.contains(t)) {
            throw ModeViolation("view " + vm.to_string() + ": tuple " + to_string(t) + " missing from target " +
                                vm.target);
        }
    }
    if (vm.mode == ViewMap::Mode::Exact) {
        for (const Tuple& t : image) {
            if (!view.contains(t)) {
                throw ModeViolation("exact view " + vm.to_string() + ": target tuple " + to_string(t) +
                                    " not produced by the query");
            }
        }
    }
}

Flux atomic_flux(const Morphism& m, const Bound& bound) {
    std::map<FluxKey, std::vector<Relation>> base;
    std::size_t n = 0;
    for (const Tree& t : m.trees()) {
        ComponentId src = require_single_component(t.root.sources(), m.source());
        ComponentId dst = m.target().component_of(t.root.target);
        Relation view = eval_rule(t.root.query, m.source());
        ++n;
        if (view.empty()) continue;
        base[{src, dst}].push_back(view.renamed("f" + std::to_string(n)));
    }
    std::map<FluxKey, ViewFamily> blocks;
    for (auto& [key, views] : base) blocks.emplace(key, close_views(views, bound));
    return Flux(bound, std::move(blocks));
}

void rename_tree(Tree& t, const std::map<std::string, std::string>& src, const std::map<std::string, std::string>* dst) {
    if (dst) t.root.target = dst->at(t.root.target);
    std::map<std::string, std::string> local;
    for (Input& in : t.inputs) {
        if (in.state == Input::State::Source) {
            std::string renamed = src.at(in.relation);
            local[in.relation] = renamed;
            in.relation = renamed;
        } else {
            for (Tree& f : in.feeders) rename_tree(f, src, nullptr);
        }
    }
    for (Atom& atom : t.root.query.body.atoms) {
        if (auto it = local.find(atom.relation); it != local.end()) atom.relation = it->second;
    }
}

Tree graft(const Tree& t, const std::map<std::string, std::vector<const Tree*>>& supply,
           const std::shared_ptr<const Instance>& middle) {
    Tree out = t;
    for (Input& in : out.inputs) {
        if (in.state == Input::State::Source) {
            auto it = supply.find(in.relation);
            if (it == supply.end()) {
                in.state = Input::State::Hidden;
                in.owner = middle;
            } else {
                in.state = Input::State::Fed;
                for (const Tree* f : it->second) in.feeders.push_back(*f);
            }
        } else if (in.state == Input::State::Fed) {
            for (Tree& f : in.feeders) f = graft(f, supply, middle);
        }
    }
    return out;
}

bool same_object(const std::shared_ptr<const Instance>& a, const std::shared_ptr<const Instance>& b) {
    return a == b || *a == *b;
}

std::shared_ptr<const Instance> bottom_ptr() {
    static const auto bottom = std::make_shared<const Instance>(Instance::bottom());
    return bottom;
}

}  // namespace

std::string ViewMap::to_string() const {
    std::ostringstream out;
    out << query.to_string() << " => " << target;
    if (!target_columns.empty() || !target_fixed.empty()) {
        std::vector<std::size_t> cols = columns_of(*this);
        out << '[';
        for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
        for (const auto& [c, v] : target_fixed) out << ';' << c << '=' << v.to_string();
        out << ']';
    }
    if (mode == Mode::Exact) out << " exact";
    return out.str();
}

bool Tree::has_hidden() const {
    for (const Input& in : inputs) {
        if (in.state == Input::State::Hidden) return true;
        for (const Tree& f : in.feeders) {
            if (f.has_hidden()) return true;
        }
    }
    return false;
}

std::set<std::string> Tree::leaves() const {
    std::set<std::string> out;
    for (const Input& in : inputs) {
        if (in.state == Input::State::Source) out.insert(in.relation);
        for (const Tree& f : in.feeders) out.merge(f.leaves());
    }
    return out;
}

std::string Tree::to_string() const {
    std::string out = "(" + root.to_string();
    for (const Input& in : inputs) {
        switch (in.state) {
        case Input::State::Source:
            break;
        case Input::State::Hidden:
            out += " | " + in.relation + ": hidden";
            break;
        case Input::State::Fed:
            out += " | " + in.relation + " <-";
            for (const Tree& f : in.feeders) out += " " + f.to_string();
            break;
        }
    }
    return out + ")";
}

Flux::Flux(Bound bound, std::map<FluxKey, ViewFamily> blocks) : bound_(bound) {
    for (auto& [key, family] : blocks) {
        if (!family.only_bottom()) blocks_.emplace(key, std::move(family));
    }
}

bool Flux::fixpoint() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](const auto& kv) { return kv.second.fixpoint(); });
}

std::size_t Flux::size() const {
    std::size_t n = 1;
    for (const auto& [key, family] : blocks_) n += family.size();
    return n;
}

bool Flux::contains(const Relation& r) const {
    if (r.empty()) return true;
    return std::any_of(blocks_.begin(), blocks_.end(), [&](const auto& kv) { return kv.second.contains(r); });
}

ViewFamily Flux::flattened() const {
    ViewFamily out;
    for (const auto& [key, family] : blocks_) out = ViewFamily::unite(out, family);
    return out;
}

std::string Flux::serialize() const {
    std::ostringstream out;
    out << "⊥\n";
    for (const auto& [key, family] : blocks_) {
        for (const auto& [arity, ext] : family.extensions()) {
            out << '[' << key.first << "->" << key.second << "] {";
            bool first = true;
            for (const Tuple& t : ext) {
                out << (first ? "" : ",") << dbcat::to_string(t);
                first = false;
            }
            out << "}\n";
        }
    }
    return out.str();
}

bool Flux::subset_of(const Flux& o) const {
    for (const auto& [key, family] : blocks_) {
        auto it = o.blocks_.find(key);
        if (it == o.blocks_.end() || !family.subset_of(it->second)) return false;
    }
    return true;
}

namespace {

bool subset_along(const Flux& a, const Flux& b, bool by_source) {
    std::map<ComponentId, ViewFamily> side;
    for (const auto& [key, family] : b.blocks()) {
        ComponentId c = by_source ? key.first : key.second;
        auto it = side.find(c);
        if (it == side.end()) {
            side.emplace(c, family);
        } else {
            it->second = ViewFamily::unite(it->second, family);
        }
    }
    for (const auto& [key, family] : a.blocks()) {
        auto it = side.find(by_source ? key.first : key.second);
        if (it == side.end() || !family.subset_of(it->second)) return false;
    }
    return true;
}

}  // namespace

bool Flux::subset_by_source(const Flux& o) const { return subset_along(*this, o, true); }

bool Flux::subset_by_target(const Flux& o) const { return subset_along(*this, o, false); }

bool Flux::equal_up_to_relabel(const Flux& o) const {
    if (blocks_.size() != o.blocks_.size()) return false;
    std::set<ComponentId> src_a, dst_a, src_b, dst_b;
    for (const auto& [key, f] : blocks_) {
        src_a.insert(key.first);
        dst_a.insert(key.second);
    }
    for (const auto& [key, f] : o.blocks_) {
        src_b.insert(key.first);
        dst_b.insert(key.second);
    }
    if (src_a.size() != src_b.size() || dst_a.size() != dst_b.size()) return false;
    std::vector<ComponentId> sa(src_a.begin(), src_a.end()), da(dst_a.begin(), dst_a.end());
    std::vector<ComponentId> sb(src_b.begin(), src_b.end()), db(dst_b.begin(), dst_b.end());
    do {
        std::map<ComponentId, ComponentId> smap;
        for (std::size_t i = 0; i < sa.size(); ++i) smap[sa[i]] = sb[i];
        std::vector<ComponentId> dperm = db;
        do {
            std::map<ComponentId, ComponentId> dmap;
            for (std::size_t i = 0; i < da.size(); ++i) dmap[da[i]] = dperm[i];
            if (relabel(*this, smap, dmap) == o) return true;
        } while (std::next_permutation(dperm.begin(), dperm.end()));
    } while (std::next_permutation(sb.begin(), sb.end()));
    return false;
}

Flux Flux::compose(const Flux& inner, const Flux& outer) {
    std::map<FluxKey, ViewFamily> blocks;
    for (const auto& [fk, ff] : inner.blocks_) {
        for (const auto& [gk, gf] : outer.blocks_) {
            if (fk.second != gk.first) continue;
            ViewFamily common = ViewFamily::intersect(ff, gf);
            FluxKey key{fk.first, gk.second};
            auto it = blocks.find(key);
            if (it == blocks.end()) {
                blocks.emplace(key, std::move(common));
            } else {
                it->second = ViewFamily::unite(it->second, common);
            }
        }
    }
    return Flux(inner.bound_, std::move(blocks));
}

Flux Flux::relabel(const Flux& f, const std::map<ComponentId, ComponentId>& src,
                   const std::map<ComponentId, ComponentId>& dst) {
    std::map<FluxKey, ViewFamily> blocks;
    for (const auto& [key, family] : f.blocks_) {
        FluxKey k{mapped(src, key.first), mapped(dst, key.second)};
        auto it = blocks.find(k);
        if (it == blocks.end()) {
            blocks.emplace(k, family);
        } else {
            it->second = ViewFamily::unite(it->second, family);
        }
    }
    return Flux(f.bound_, std::move(blocks));
}

Flux Flux::unite(const Flux& a, const Flux& b) {
    std::map<FluxKey, ViewFamily> blocks = a.blocks_;
    for (const auto& [key, family] : b.blocks_) {
        auto it = blocks.find(key);
        if (it == blocks.end()) {
            blocks.emplace(key, family);
        } else {
            it->second = ViewFamily::unite(it->second, family);
        }
    }
    return Flux(a.bound_, std::move(blocks));
}

Morphism::Kind Morphism::kind() const {
    bool hidden = std::any_of(trees_.begin(), trees_.end(), [](const Tree& t) { return t.has_hidden(); });
    return hidden ? Kind::PArrow : Kind::CArrow;
}

bool Morphism::is_marker() const noexcept { return recipe_ && recipe_->kind == Recipe::Kind::Marker; }

std::set<std::string> Morphism::sources() const {
    std::set<std::string> out;
    for (const Tree& t : trees_) out.merge(t.leaves());
    return out;
}

std::set<std::string> Morphism::sinks() const {
    std::set<std::string> out;
    for (const Tree& t : trees_) out.insert(t.root.target);
    return out;
}

Flux Morphism::flux(const Bound& bound) const {
    {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        auto it = cache_->fluxes.find(bound);
        if (it != cache_->fluxes.end()) return it->second;
    }
    Flux out;
    switch (recipe_->kind) {
    case Recipe::Kind::Atomic:
        out = atomic_flux(*this, bound);
        break;
    case Recipe::Kind::Composite:
        out = Flux::compose(recipe_->second->flux(bound), recipe_->first->flux(bound));
        break;
    case Recipe::Kind::Sum:
        out = Flux::unite(Flux::relabel(recipe_->first->flux(bound), recipe_->left_src, recipe_->left_dst),
                          Flux::relabel(recipe_->second->flux(bound), recipe_->right_src, recipe_->right_dst));
        break;
    case Recipe::Kind::Empty:
    case Recipe::Kind::Marker:
        out = Flux(bound, {});
        break;
    }
    std::lock_guard<std::mutex> lock(cache_->mutex);
    return cache_->fluxes.emplace(bound, std::move(out)).first->second;
}

std::string Morphism::to_string() const {
    if (is_marker()) return "id_⊥⁰ (marker)";
    std::string out = kind() == Kind::CArrow ? "c-arrow" : "p-arrow";
    if (trees_.empty()) return out + " ∅";
    for (const Tree& t : trees_) out += "\n  " + t.to_string();
    return out;
}

Morphism make_atomic(std::vector<ViewMap> viewmaps, std::shared_ptr<const Instance> a,
                     std::shared_ptr<const Instance> b) {
    std::vector<Tree> trees;
    for (ViewMap& vm : viewmaps) {
        check_viewmap(vm, *a, *b);
        Tree t;
        for (const std::string& s : vm.sources()) t.inputs.push_back({s, Input::State::Source, nullptr, {}});
        t.root = std::move(vm);
        trees.push_back(std::move(t));
    }
    return make_morphism(std::move(a), std::move(b), std::move(trees), recipe_of(Recipe::Kind::Atomic));
}

Morphism make_atomic(std::vector<ViewMap> viewmaps, const Instance& a, const Instance& b) {
    return make_atomic(std::move(viewmaps), std::make_shared<const Instance>(a), std::make_shared<const Instance>(b));
}

Morphism compose(const Morphism& g, const Morphism& f) {
    if (!same_object(f.target_ptr(), g.source_ptr())) {
        throw CompositionMismatch("compose: target of the inner arrow differs from the source of the outer arrow");
    }
    std::set<std::string> sinks = f.sinks();
    std::map<std::string, std::vector<const Tree*>> supply;
    for (const Tree& t : f.trees()) supply[t.root.target].push_back(&t);
    std::vector<Tree> trees;
    for (const Tree& t : g.trees()) {
        std::set<std::string> leaves = t.leaves();
        bool meets = std::any_of(leaves.begin(), leaves.end(), [&](const std::string& s) { return sinks.contains(s); });
        if (meets) trees.push_back(graft(t, supply, g.source_ptr()));
    }
    auto r = std::make_shared<Recipe>();
    r->kind = Recipe::Kind::Composite;
    r->first = std::make_shared<const Morphism>(g);
    r->second = std::make_shared<const Morphism>(f);
    return make_morphism(f.source_ptr(), g.target_ptr(), std::move(trees), r);
}

Morphism identity(std::shared_ptr<const Instance> a) {
    std::vector<ViewMap> vms;
    for (const auto& [name, r] : a->relations()) {
        if (r.is_bottom() || r.arity() == 0) continue;
        ViewMap vm;
        vm.target = name;
        vm.mode = ViewMap::Mode::Exact;
        Atom atom{name, {}};
        for (std::size_t i = 0; i < r.arity(); ++i) {
            vm.query.head.push_back("X" + std::to_string(i));
            atom.args.push_back(Term::var(vm.query.head.back()));
        }
        vm.query.body.atoms.push_back(std::move(atom));
        vms.push_back(std::move(vm));
    }
    return make_atomic(std::move(vms), a, a);
}

Morphism identity(const Instance& a) { return identity(std::make_shared<const Instance>(a)); }

Morphism empty_morphism(std::shared_ptr<const Instance> a, std::shared_ptr<const Instance> b) {
    return make_morphism(std::move(a), std::move(b), {}, recipe_of(Recipe::Kind::Empty));
}

Morphism empty_morphism(const Instance& a, const Instance& b) {
    return empty_morphism(std::make_shared<const Instance>(a), std::make_shared<const Instance>(b));
}

Morphism marker_morphism() { return make_morphism(bottom_ptr(), bottom_ptr(), {}, recipe_of(Recipe::Kind::Marker)); }

bool equivalent(const Morphism& f, const Morphism& g, const Bound& bound) { return f.flux(bound) == g.flux(bound); }

bool equivalent_up_to_relabel(const Morphism& f, const Morphism& g, const Bound& bound) {
    return f.flux(bound).equal_up_to_relabel(g.flux(bound));
}

Morphism coproduct_morphism(const Morphism& f, const Morphism& g) {
    UnionResult su = disjoint_union_mapped(f.source(), g.source());
    UnionResult tu = disjoint_union_mapped(f.target(), g.target());
    std::vector<Tree> trees;
    for (Tree t : f.trees()) {
        rename_tree(t, su.left_names, &tu.left_names);
        trees.push_back(std::move(t));
    }
    for (Tree t : g.trees()) {
        rename_tree(t, su.right_names, &tu.right_names);
        trees.push_back(std::move(t));
    }
    auto r = std::make_shared<Recipe>();
    r->kind = Recipe::Kind::Sum;
    r->first = std::make_shared<const Morphism>(f);
    r->second = std::make_shared<const Morphism>(g);
    r->left_src = su.left_components;
    r->right_src = su.right_components;
    r->left_dst = tu.left_components;
    r->right_dst = tu.right_components;
    return make_morphism(std::make_shared<const Instance>(su.instance), std::make_shared<const Instance>(tu.instance),
                         std::move(trees), r);
}

namespace {

ViewMap copy_map(const std::string& from, const std::string& to, std::size_t arity) {
    ViewMap vm;
    vm.target = to;
    vm.mode = ViewMap::Mode::Exact;
    Atom atom{from, {}};
    for (std::size_t i = 0; i < arity; ++i) {
        vm.query.head.push_back("X" + std::to_string(i));
        atom.args.push_back(Term::var(vm.query.head.back()));
    }
    vm.query.body.atoms.push_back(std::move(atom));
    return vm;
}

}  // namespace

Morphism injection(const Instance& a, const Instance& b, Side side) {
    UnionResult u = disjoint_union_mapped(a, b);
    const Instance& part = side == Side::Left ? a : b;
    const auto& names = side == Side::Left ? u.left_names : u.right_names;
    std::vector<ViewMap> vms;
    for (const auto& [name, r] : part.relations()) {
        if (r.is_bottom() || r.arity() == 0) continue;
        vms.push_back(copy_map(name, names.at(name), r.arity()));
    }
    return make_atomic(std::move(vms), std::make_shared<const Instance>(part),
                       std::make_shared<const Instance>(u.instance));
}

Morphism projection(const Instance& a, const Instance& b, Side side) {
    UnionResult u = disjoint_union_mapped(a, b);
    const Instance& part = side == Side::Left ? a : b;
    const auto& names = side == Side::Left ? u.left_names : u.right_names;
    std::vector<ViewMap> vms;
    for (const auto& [name, r] : part.relations()) {
        if (r.is_bottom() || r.arity() == 0) continue;
        vms.push_back(copy_map(names.at(name), name, r.arity()));
    }
    return make_atomic(std::move(vms), std::make_shared<const Instance>(u.instance),
                       std::make_shared<const Instance>(part));
}

Morphism mediating(const Morphism& f, const Morphism& g) {
    if (!same_object(f.target_ptr(), g.target_ptr())) {
        throw CompositionMismatch("mediating: the two arrows have different targets");
    }
    UnionResult su = disjoint_union_mapped(f.source(), g.source());
    std::vector<Tree> trees;
    for (Tree t : f.trees()) {
        rename_tree(t, su.left_names, nullptr);
        trees.push_back(std::move(t));
    }
    for (Tree t : g.trees()) {
        rename_tree(t, su.right_names, nullptr);
        trees.push_back(std::move(t));
    }
    auto r = std::make_shared<Recipe>();
    r->kind = Recipe::Kind::Sum;
    r->first = std::make_shared<const Morphism>(f);
    r->second = std::make_shared<const Morphism>(g);
    r->left_src = su.left_components;
    r->right_src = su.right_components;
    r->left_dst = r->right_dst = identity_map(f.target());
    return make_morphism(std::make_shared<const Instance>(su.instance), f.target_ptr(), std::move(trees), r);
}

Morphism pairing(const Morphism& f, const Morphism& g) {
    if (!same_object(f.source_ptr(), g.source_ptr())) {
        throw CompositionMismatch("pairing: the two arrows have different sources");
    }
    UnionResult tu = disjoint_union_mapped(f.target(), g.target());
    std::map<std::string, std::string> same;
    for (const auto& [name, r] : f.source().relations()) same[name] = name;
    std::vector<Tree> trees;
    for (Tree t : f.trees()) {
        rename_tree(t, same, &tu.left_names);
        trees.push_back(std::move(t));
    }
    for (Tree t : g.trees()) {
        rename_tree(t, same, &tu.right_names);
        trees.push_back(std::move(t));
    }
    auto r = std::make_shared<Recipe>();
    r->kind = Recipe::Kind::Sum;
    r->first = std::make_shared<const Morphism>(f);
    r->second = std::make_shared<const Morphism>(g);
    r->left_src = r->right_src = identity_map(f.source());
    r->left_dst = tu.left_components;
    r->right_dst = tu.right_components;
    return make_morphism(f.source_ptr(), std::make_shared<const Instance>(tu.instance), std::move(trees), r);
}

Report verify_duality(const Instance& a, const Instance& b, const Bound& bound, const DualityLegs& legs) {
    Report report;
    UnionResult u = disjoint_union_mapped(a, b);
    Morphism in_a = injection(a, b, Side::Left);
    Morphism in_b = injection(a, b, Side::Right);
    Morphism p_a = projection(a, b, Side::Left);
    Morphism p_b = projection(a, b, Side::Right);

    ViewSet tab = power_view(u.instance, bound);
    std::map<ComponentId, ViewFamily> tagged;
    ViewSet ta = power_view(a, bound);
    ViewSet tb = power_view(b, bound);
    for (const auto& [c, fam] : ta.blocks()) tagged.emplace(u.left_components.at(c), fam);
    for (const auto& [c, fam] : tb.blocks()) tagged.emplace(u.right_components.at(c), fam);
    report.add("coproduct.flux", tab == ViewSet(bound, std::move(tagged)), "T(A+B) = TA + TB");

    auto idempotence = [&](const std::string& id, const Instance& x) {
        bool iso = instances_isomorphic(disjoint_union(x, x), x, bound);
        bool expected = is_empty_isomorphic(x);
        report.add(id, iso == expected, expected ? "empty object: X+X ≃ X" : "X+X not ≃ X");
    };
    idempotence("coproduct.idempotence.left", a);
    idempotence("coproduct.idempotence.right", b);

    auto [f, g] = legs.coproduct.value_or(std::pair{in_a, in_b});
    Morphism k = mediating(f, g);
    report.add("coproduct.triangle.left", equivalent(compose(k, in_a), f, bound), "k∘in_A ≈ f");
    report.add("coproduct.triangle.right", equivalent(compose(k, in_b), g, bound), "k∘in_B ≈ g");

    report.add("product.retraction.left", equivalent(compose(p_a, in_a), identity(a), bound), "p_A∘in_A ≈ id_A");
    report.add("product.retraction.right", equivalent(compose(p_b, in_b), identity(b), bound), "p_B∘in_B ≈ id_B");

    auto [h, l] = legs.product.value_or(std::pair{p_a, p_b});
    Morphism pair = pairing(h, l);
    report.add("product.triangle.left", equivalent(compose(p_a, pair), h, bound), "p_A∘<f,g> ≈ f");
    report.add("product.triangle.right", equivalent(compose(p_b, pair), l, bound), "p_B∘<f,g> ≈ g");

    report.notes.push_back(
        "In Set the cartesian product A×B and the disjoint union A+B are different objects, so Set cannot serve as "
        "the base category; in DB the object A+B carries both the injections and the projections.");
    report.sort();
    return report;
}

}  // namespace dbcat
