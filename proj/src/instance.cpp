#include "dbcat/instance.hpp"

#include <algorithm>

#include "dbcat/errors.hpp"

namespace dbcat {

Relation::Relation(std::string name, std::size_t arity, std::set<Tuple> tuples,
                   std::vector<std::string> attributes)
    : name_(std::move(name)), arity_(arity), attributes_(std::move(attributes)), tuples_(std::move(tuples)) {
    if (name_.empty()) throw InvalidInstance("relation name must not be empty");
    if (arity_ == 0 && !tuples_.empty()) throw InvalidInstance("relation " + name_ + " has arity 0");
    if (attributes_.empty()) {
        for (std::size_t i = 0; i < arity_; ++i) attributes_.push_back("c" + std::to_string(i));
    } else if (attributes_.size() != arity_) {
        throw InvalidInstance("relation " + name_ + ": attribute count differs from arity");
    }
    for (const Tuple& t : tuples_) {
        if (t.size() != arity_) {
            throw InvalidInstance("relation " + name_ + ": tuple " + to_string(t) + " does not have arity " +
                                  std::to_string(arity_));
        }
    }
}

Relation Relation::bottom() {
    Relation r;
    r.name_ = std::string(kBottomName);
    return r;
}

Relation Relation::renamed(std::string name) const {
    Relation out = *this;
    out.name_ = std::move(name);
    return out;
}

Instance::Instance(std::vector<Relation> relations, std::map<std::string, ComponentId> partition) {
    for (Relation& r : relations) {
        std::string name = r.name();
        if (!relations_.emplace(name, std::move(r)).second) {
            throw InvalidInstance("duplicate relation name " + name);
        }
    }
    for (const auto& [name, id] : partition) {
        if (!relations_.contains(name)) throw InvalidInstance("partition names unknown relation " + name);
        partition_[name] = id;
    }
    for (const auto& [name, r] : relations_) partition_.try_emplace(name, 0);
}

Instance Instance::bottom() { return Instance({Relation::bottom()}); }

bool Instance::has_relation(std::string_view name) const { return relations_.find(std::string(name)) != relations_.end(); }

const Relation& Instance::relation(std::string_view name) const {
    auto it = relations_.find(std::string(name));
    if (it != relations_.end()) return it->second;
    static const Relation bottom = Relation::bottom();
    if (name == kBottomName) return bottom;
    throw MalformedQuery("unknown relation " + std::string(name));
}

ComponentId Instance::component_of(std::string_view name) const {
    auto it = partition_.find(std::string(name));
    if (it == partition_.end()) throw MalformedQuery("unknown relation " + std::string(name));
    return it->second;
}

std::vector<ComponentId> Instance::components() const {
    std::set<ComponentId> ids;
    for (const auto& [name, id] : partition_) {
        if (name != kBottomName) ids.insert(id);
    }
    return {ids.begin(), ids.end()};
}

Instance Instance::component(ComponentId id) const {
    std::vector<Relation> rels;
    std::map<std::string, ComponentId> part;
    for (const auto& [name, r] : relations_) {
        if (partition_.at(name) == id && !r.is_bottom()) {
            rels.push_back(r);
            part[name] = id;
        }
    }
    return Instance(std::move(rels), std::move(part));
}

std::size_t Instance::max_arity() const {
    std::size_t m = 0;
    for (const auto& [name, r] : relations_) m = std::max(m, r.arity());
    return m;
}

std::size_t Instance::tuple_count() const {
    std::size_t n = 0;
    for (const auto& [name, r] : relations_) n += r.size();
    return n;
}

namespace {

bool has_bottom(const Instance& a) { return a.has_relation(kBottomName); }

std::string fresh_name(const std::string& base, const std::string& suffix,
                       const std::map<std::string, Relation>& taken) {
    std::string name = base + "#" + suffix;
    while (taken.contains(name)) name += "'";
    return name;
}

}  // namespace

UnionResult disjoint_union_mapped(const Instance& a, const Instance& b) {
    UnionResult out;
    ComponentId next = 1;
    for (ComponentId c : a.components()) out.left_components[c] = next++;
    for (ComponentId c : b.components()) out.right_components[c] = next++;

    std::map<std::string, Relation> rels;
    std::map<std::string, ComponentId> part;
    auto place = [&](const Instance& side, const Instance& other, std::map<std::string, std::string>& names,
                     const std::map<ComponentId, ComponentId>& comps) {
        for (const auto& [name, r] : side.relations()) {
            if (r.is_bottom()) continue;
            ComponentId c = comps.at(side.component_of(name));
            std::string target = name;
            if (other.has_relation(name)) target = fresh_name(name, std::to_string(c), rels);
            names[name] = target;
            rels.emplace(target, r.renamed(target));
            part[target] = c;
        }
    };
    place(a, b, out.left_names, out.left_components);
    place(b, a, out.right_names, out.right_components);

    std::vector<Relation> list;
    for (auto& [name, r] : rels) list.push_back(std::move(r));
    if (list.empty() && (has_bottom(a) || has_bottom(b))) {
        out.instance = Instance::bottom();
    } else {
        out.instance = Instance(std::move(list), std::move(part));
    }
    return out;
}

Instance disjoint_union(const Instance& a, const Instance& b) { return disjoint_union_mapped(a, b).instance; }

UnionResult federated_union_mapped(const Instance& a, const Instance& b) {
    UnionResult out;
    for (ComponentId c : a.components()) out.left_components[c] = 0;
    for (ComponentId c : b.components()) out.right_components[c] = 0;

    std::map<std::string, Relation> rels;
    auto place = [&](const Instance& side, const Instance& other, std::map<std::string, std::string>& names,
                     const char* tag) {
        for (const auto& [name, r] : side.relations()) {
            if (r.is_bottom()) continue;
            std::string target = other.has_relation(name) ? fresh_name(name, tag, rels) : name;
            names[name] = target;
            rels.emplace(target, r.renamed(target));
        }
    };
    place(a, b, out.left_names, "1");
    place(b, a, out.right_names, "2");

    std::vector<Relation> list;
    for (auto& [name, r] : rels) list.push_back(std::move(r));
    if (list.empty() && (has_bottom(a) || has_bottom(b))) {
        out.instance = Instance::bottom();
    } else {
        out.instance = Instance(std::move(list));
    }
    return out;
}

Instance federated_union(const Instance& a, const Instance& b) { return federated_union_mapped(a, b).instance; }

bool is_empty_isomorphic(const Instance& a) {
    return std::all_of(a.relations().begin(), a.relations().end(), [](const auto& kv) { return kv.second.empty(); });
}

std::set<Value> active_domain(const Instance& a) {
    std::set<Value> out;
    for (const auto& [name, r] : a.relations()) {
        for (const Tuple& t : r.tuples()) out.insert(t.begin(), t.end());
    }
    return out;
}

}  // namespace dbcat
