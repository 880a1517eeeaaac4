#include "dbcat/schema.hpp"

#include <algorithm>

#include "dbcat/errors.hpp"

namespace dbcat {

namespace {

void rename_conjunction(Conjunction& c, const std::map<std::string, std::string>& names) {
    for (Atom& a : c.atoms) {
        if (auto it = names.find(a.relation); it != names.end()) a.relation = it->second;
    }
}

bool compound(const SchemaTerm& t) {
    return t.kind() == SchemaTerm::Kind::Sep || t.kind() == SchemaTerm::Kind::Fed;
}

void check_atoms(const Conjunction& c, const std::map<std::string, std::size_t>& relations, const std::string& where) {
    for (const Atom& a : c.atoms) {
        auto it = relations.find(a.relation);
        if (it == relations.end()) throw SchemaError(where + ": unknown relation " + a.relation);
        if (it->second != a.args.size()) {
            throw SchemaError(where + ": " + a.relation + " has arity " + std::to_string(it->second));
        }
    }
}

std::map<std::string, std::size_t> arities(const Instance& skeleton) {
    std::map<std::string, std::size_t> out;
    for (const auto& [name, r] : skeleton.relations()) {
        if (!r.is_bottom()) out[name] = r.arity();
    }
    return out;
}

ComponentId query_component(const Conjunction& body, const Instance& skeleton, const std::string& where) {
    try {
        return require_single_component(body.relations(), skeleton);
    } catch (const CrossComponentQuery& e) {
        throw SchemaError(where + ": " + e.what());
    }
}

std::vector<std::size_t> iota_columns(std::size_t k) {
    std::vector<std::size_t> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = i;
    return out;
}

}  // namespace

void Schema::validate() const {
    for (const auto& [rel, arity] : relations) {
        if (arity == 0) throw SchemaError("schema " + name + ": relation " + rel + " needs a positive arity");
    }
    for (const Constraint& c : constraints) {
        try {
            dbcat::validate(c);
        } catch (const MalformedQuery& e) {
            throw SchemaError("schema " + name + ": " + e.what());
        }
        std::string where = "schema " + name + " constraint " + to_string(c);
        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, Tgd>) {
                    check_atoms(x.left, relations, where);
                    check_atoms(x.right, relations, where);
                    if (!x.weakly_full()) throw SchemaError(where + ": only weakly-full tgds are admitted");
                } else {
                    check_atoms(x.body, relations, where);
                }
            },
            c);
    }
}

SchemaTermPtr SchemaTerm::atom(std::shared_ptr<const Schema> schema) {
    auto t = std::shared_ptr<SchemaTerm>(new SchemaTerm);
    t->kind_ = Kind::Atom;
    t->schema_ = std::move(schema);
    return t;
}

SchemaTermPtr SchemaTerm::sep(SchemaTermPtr a, SchemaTermPtr b) {
    auto t = std::shared_ptr<SchemaTerm>(new SchemaTerm);
    t->kind_ = Kind::Sep;
    t->left_ = std::move(a);
    t->right_ = std::move(b);
    return t;
}

SchemaTermPtr SchemaTerm::fed(SchemaTermPtr a, SchemaTermPtr b) {
    auto t = std::shared_ptr<SchemaTerm>(new SchemaTerm);
    t->kind_ = Kind::Fed;
    t->left_ = std::move(a);
    t->right_ = std::move(b);
    return t;
}

SchemaTermPtr SchemaTerm::empty() {
    static const SchemaTermPtr e(new SchemaTerm);
    return e;
}

std::vector<std::shared_ptr<const Schema>> SchemaTerm::leaves() const {
    std::vector<std::shared_ptr<const Schema>> out;
    if (kind_ == Kind::Atom) out.push_back(schema_);
    if (left_) {
        auto l = left_->leaves();
        out.insert(out.end(), l.begin(), l.end());
    }
    if (right_) {
        auto r = right_->leaves();
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

std::size_t SchemaTerm::depth() const {
    if (!compound(*this)) return 0;
    return 1 + std::max(left_->depth(), right_->depth());
}

std::string SchemaTerm::to_string() const {
    switch (kind_) {
    case Kind::Atom:
        return schema_->name;
    case Kind::Empty:
        return "empty";
    case Kind::Sep:
    case Kind::Fed: {
        std::string rhs = right_->to_string();
        if (compound(*right_)) rhs = "(" + rhs + ")";
        return left_->to_string() + (kind_ == Kind::Sep ? " sep " : " fed ") + rhs;
    }
    }
    return {};
}

std::set<std::string> SchemaTerm::qualified_relations() const {
    std::set<std::string> out;
    for (const auto& leaf : leaves()) {
        for (const auto& [rel, arity] : leaf->relations) {
            out.insert(leaf->name + "." + rel + "/" + std::to_string(arity));
        }
    }
    return out;
}

std::set<std::string> SchemaTerm::qualified_constraints() const {
    std::set<std::string> out;
    for (const auto& leaf : leaves()) {
        for (const Constraint& c : leaf->constraints) out.insert(leaf->name + ": " + dbcat::to_string(c));
    }
    return out;
}

bool schema_identical(const SchemaTerm& a, const SchemaTerm& b) {
    return a.qualified_relations() == b.qualified_relations() &&
           a.qualified_constraints() == b.qualified_constraints();
}

Sentence rename_relations(const Sentence& s, const std::map<std::string, std::string>& names) {
    Sentence out = s;
    for (Constraint& c : out) {
        std::visit(
            [&](auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, Tgd>) {
                    rename_conjunction(x.left, names);
                    rename_conjunction(x.right, names);
                } else {
                    rename_conjunction(x.body, names);
                }
            },
            c);
    }
    return out;
}

ConjunctiveRule rename_relations(const ConjunctiveRule& q, const std::map<std::string, std::string>& names) {
    ConjunctiveRule out = q;
    rename_conjunction(out.body, names);
    return out;
}

Flattened flatten(const SchemaTerm& t) {
    switch (t.kind()) {
    case SchemaTerm::Kind::Empty:
        return {Instance::bottom(), {}};
    case SchemaTerm::Kind::Atom: {
        std::vector<Relation> rels;
        for (const auto& [rel, arity] : t.schema()->relations) rels.emplace_back(rel, arity);
        return {Instance(std::move(rels)), t.schema()->constraints};
    }
    case SchemaTerm::Kind::Sep:
    case SchemaTerm::Kind::Fed: {
        Flattened l = flatten(*t.left());
        Flattened r = flatten(*t.right());
        UnionResult u = t.kind() == SchemaTerm::Kind::Sep ? disjoint_union_mapped(l.skeleton, r.skeleton)
                                                          : federated_union_mapped(l.skeleton, r.skeleton);
        Sentence s = rename_relations(l.constraints, u.left_names);
        Sentence rs = rename_relations(r.constraints, u.right_names);
        s.insert(s.end(), rs.begin(), rs.end());
        return {std::move(u.instance), std::move(s)};
    }
    }
    return {};
}

std::string MappingPair::to_string() const {
    std::string rhs = kind == Kind::Direct || (kind == Kind::Fresh && target_query.body.atoms.empty())
                          ? target_atom.to_string()
                          : target_query.to_string();
    return source_query.to_string() + " => " + rhs;
}

MappingPair make_pair(ConjunctiveRule source_query, Atom target_atom, const std::set<std::string>& target_relations) {
    source_query.validate();
    if (source_query.head.empty()) throw SchemaError("mapping source query needs a head");
    MappingPair p;
    std::string where = "mapping pair " + source_query.to_string() + " => " + target_atom.to_string();
    if (target_relations.contains(target_atom.relation)) {
        p.kind = MappingPair::Kind::Direct;
        std::set<std::string> head(source_query.head.begin(), source_query.head.end());
        if (head.size() != source_query.head.size()) throw SchemaError(where + ": repeated head variable");
        std::map<std::string, int> seen;
        for (const Term& t : target_atom.args) {
            if (t.is_variable && ++seen[t.variable] > 1) throw SchemaError(where + ": repeated variable in target atom");
        }
        for (const std::string& h : source_query.head) {
            if (!seen.contains(h)) throw SchemaError(where + ": head variable " + h + " missing from target atom");
        }
    } else {
        p.kind = MappingPair::Kind::Fresh;
        std::set<std::string> vars;
        for (const Term& t : target_atom.args) {
            if (!t.is_variable || !vars.insert(t.variable).second) {
                throw SchemaError(where + ": a fresh relation takes distinct variables");
            }
        }
        if (target_atom.args.size() != source_query.head.size()) throw SchemaError(where + ": arity mismatch");
        p.target_query.head_name = target_atom.relation;
        for (const Term& t : target_atom.args) p.target_query.head.push_back(t.variable);
    }
    p.source_query = std::move(source_query);
    p.target_atom = std::move(target_atom);
    return p;
}

MappingPair make_pair(ConjunctiveRule source_query, ConjunctiveRule target_query,
                      const std::set<std::string>& target_relations) {
    source_query.validate();
    target_query.validate();
    std::string where = "mapping pair " + source_query.to_string() + " => " + target_query.to_string();
    if (source_query.head.empty()) throw SchemaError(where + ": source query needs a head");
    if (target_query.head.size() != source_query.head.size()) throw SchemaError(where + ": head arities differ");
    MappingPair p;
    if (target_query.head_name == "_") {
        p.kind = MappingPair::Kind::Helper;
    } else if (target_relations.contains(target_query.head_name)) {
        throw SchemaError(where + ": head " + target_query.head_name + " already names a target relation");
    } else {
        p.kind = MappingPair::Kind::Fresh;
        p.target_atom.relation = target_query.head_name;
        for (const std::string& h : target_query.head) p.target_atom.args.push_back(Term::var(h));
    }
    p.source_query = std::move(source_query);
    p.target_query = std::move(target_query);
    return p;
}

bool GraphPath::operator==(const GraphPath& o) const {
    return steps == o.steps && source->to_string() == o.source->to_string() &&
           target->to_string() == o.target->to_string();
}

GraphPath path_of(const SchemaMapping& m) { return {m.source, m.target, {m.name}}; }

GraphPath identity_path(SchemaTermPtr node) { return {node, node, {}}; }

GraphPath seq_compose(const GraphPath& second, const GraphPath& first) {
    if (first.target->to_string() != second.source->to_string()) {
        throw CompositionMismatch("sequential composition: " + first.target->to_string() + " is not " +
                                  second.source->to_string());
    }
    GraphPath out{first.source, second.target, first.steps};
    out.steps.insert(out.steps.end(), second.steps.begin(), second.steps.end());
    return out;
}

SchemaMapping branch(const SchemaMapping& m1, const SchemaMapping& m2, std::string name) {
    if (m1.source->to_string() != m2.source->to_string()) {
        throw CompositionMismatch("branching: " + m1.name + " and " + m2.name + " have different sources");
    }
    if (m1.exact != m2.exact) throw SchemaError("branching: " + m1.name + " and " + m2.name + " differ in mode");
    UnionResult u = disjoint_union_mapped(flatten(*m1.target).skeleton, flatten(*m2.target).skeleton);
    SchemaMapping out;
    out.name = name.empty() ? m1.name + "+" + m2.name : std::move(name);
    out.source = m1.source;
    out.target = SchemaTerm::sep(m1.target, m2.target);
    out.exact = m1.exact;
    auto retarget = [](MappingPair p, const std::map<std::string, std::string>& names) {
        if (p.kind == MappingPair::Kind::Direct) {
            p.target_atom.relation = names.at(p.target_atom.relation);
        } else {
            p.target_query = rename_relations(p.target_query, names);
        }
        return p;
    };
    for (const MappingPair& p : m1.pairs) out.pairs.push_back(retarget(p, u.left_names));
    for (const MappingPair& p : m2.pairs) out.pairs.push_back(retarget(p, u.right_names));
    return out;
}

std::vector<SchemaTermPtr> MappingGraph::nodes() const {
    std::vector<SchemaTermPtr> out;
    std::set<std::string> seen;
    auto add = [&](const SchemaTermPtr& t) {
        if (seen.insert(t->to_string()).second) out.push_back(t);
    };
    for (const SchemaMapping& m : mappings) {
        add(m.source);
        add(m.target);
    }
    for (const GraphPath& p : compositions) {
        add(p.source);
        add(p.target);
    }
    return out;
}

const SchemaMapping& MappingGraph::mapping(const std::string& n) const {
    for (const SchemaMapping& m : mappings) {
        if (m.name == n) return m;
    }
    throw SchemaError("graph " + name + " has no mapping " + n);
}

std::optional<std::size_t> Sketch::find_object(const std::string& name) const {
    for (std::size_t i = 0; i < objects.size(); ++i) {
        if (objects[i].name == name) return i;
    }
    return std::nullopt;
}

bool Sketch::at_most_one_arrow() const {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const SketchArrow& a : arrows) {
        if (a.kind == SketchArrow::Kind::Identity) continue;
        if (!seen.insert({a.source, a.target}).second) return false;
    }
    return true;
}

Sketch build_sketch(const MappingGraph& g) {
    Sketch s;
    SketchObject empty;
    empty.kind = SketchObject::Kind::Empty;
    empty.name = "A_∅";
    empty.term = SchemaTerm::empty();
    s.objects.push_back(std::move(empty));

    std::map<std::string, std::size_t> index;
    std::map<std::size_t, Flattened> flat;
    for (const SchemaTermPtr& node : g.nodes()) {
        if (node->kind() == SchemaTerm::Kind::Empty) {
            index[node->to_string()] = 0;
            continue;
        }
        SketchObject o;
        o.name = node->to_string();
        o.term = node;
        Flattened f = flatten(*node);
        o.constraints = f.constraints;
        index[o.name] = s.objects.size();
        flat[s.objects.size()] = std::move(f);
        s.objects.push_back(std::move(o));
    }

    std::map<std::pair<std::size_t, std::size_t>, SketchArrow> merged;
    std::vector<SketchArrow> helpers;
    std::vector<SketchArrow> sentences;
    for (const SchemaMapping& m : g.mappings) {
        std::size_t src = index.at(m.source->to_string());
        std::size_t dst = index.at(m.target->to_string());
        if (dst == 0) throw SchemaError("mapping " + m.name + " targets the empty schema");
        const Instance& sk = src == 0 ? Instance::bottom() : flat.at(src).skeleton;
        const Instance& tk = flat.at(dst).skeleton;
        std::map<std::string, std::size_t> src_ar = src == 0 ? std::map<std::string, std::size_t>{} : arities(sk);
        std::map<std::string, std::size_t> dst_ar = arities(tk);
        ViewMap::Mode mode = m.exact ? ViewMap::Mode::Exact : ViewMap::Mode::Inclusion;
        std::size_t helper_n = 0;
        for (const MappingPair& p : m.pairs) {
            std::string where = "mapping " + m.name + " pair " + p.to_string();
            check_atoms(p.source_query.body, src_ar, where);
            query_component(p.source_query.body, sk, where);
            ViewMap vm;
            vm.query = p.source_query;
            vm.mode = mode;
            switch (p.kind) {
            case MappingPair::Kind::Direct: {
                auto it = dst_ar.find(p.target_atom.relation);
                if (it == dst_ar.end() || it->second != p.target_atom.args.size()) {
                    throw SchemaError(where + ": target atom does not match the target schema");
                }
                vm.target = p.target_atom.relation;
                for (const std::string& h : p.source_query.head) {
                    for (std::size_t c = 0; c < p.target_atom.args.size(); ++c) {
                        const Term& t = p.target_atom.args[c];
                        if (t.is_variable && t.variable == h) vm.target_columns.push_back(c);
                    }
                }
                for (std::size_t c = 0; c < p.target_atom.args.size(); ++c) {
                    if (!p.target_atom.args[c].is_variable) vm.target_fixed.emplace_back(c, p.target_atom.args[c].constant);
                }
                if (vm.target_columns == iota_columns(p.target_atom.args.size())) vm.target_columns.clear();
                break;
            }
            case MappingPair::Kind::Fresh: {
                SketchObject& o = s.objects[dst];
                GammaRelation gr;
                gr.name = p.target_query.head_name;
                gr.arity = p.target_query.head.size();
                if (dst_ar.contains(gr.name) ||
                    std::any_of(o.added.begin(), o.added.end(), [&](const GammaRelation& x) { return x.name == gr.name; })) {
                    throw SchemaError(where + ": relation " + gr.name + " is already defined in " + o.name);
                }
                if (!p.target_query.body.atoms.empty()) {
                    check_atoms(p.target_query.body, dst_ar, where);
                    gr.component = query_component(p.target_query.body, tk, where);
                    gr.definition = p.target_query;
                } else {
                    std::vector<ComponentId> comps = tk.components();
                    gr.component = comps.empty() ? 0 : comps.front();
                }
                vm.target = gr.name;
                o.added.push_back(std::move(gr));
                break;
            }
            case MappingPair::Kind::Helper: {
                check_atoms(p.target_query.body, dst_ar, where);
                query_component(p.target_query.body, tk, where);
                std::string tag = m.name + "_" + std::to_string(++helper_n);
                SketchObject h;
                h.kind = SketchObject::Kind::Helper;
                h.name = "C_" + tag;
                h.helper_relation = "c_" + tag;
                h.helper_k = p.source_query.head.size();
                h.helper_source = src;
                h.helper_target = dst;
                h.helper_source_query = p.source_query;
                h.helper_target_query = p.target_query;
                h.constraints = {sentinel_tgd(h.helper_relation, h.helper_k)};
                std::size_t hi = s.objects.size();
                if (index.contains(h.name)) throw SchemaError("helper name " + h.name + " clashes with a node");
                index[h.name] = hi;
                s.objects.push_back(h);

                auto helper_map = [&](const ConjunctiveRule& q, Value tag_value) {
                    ViewMap w;
                    w.query = q;
                    w.target = h.helper_relation;
                    w.target_columns = iota_columns(h.helper_k);
                    w.target_fixed = {{h.helper_k, std::move(tag_value)}};
                    return w;
                };
                helpers.push_back({SketchArrow::Kind::Helper, "f_AC_" + tag, src, hi,
                                   {helper_map(p.source_query, Value::sentinel_a())}, {}});
                helpers.push_back({SketchArrow::Kind::Helper, "f_BC_" + tag, dst, hi,
                                   {helper_map(p.target_query, Value::sentinel_b())}, {}});
                sentences.push_back({SketchArrow::Kind::Sentence, "phi_" + h.name, hi, 0, {}, h.constraints});
                continue;
            }
            }
            auto [it, fresh] = merged.try_emplace({src, dst});
            SketchArrow& a = it->second;
            if (fresh) {
                a.kind = SketchArrow::Kind::Mapping;
                a.name = m.name;
                a.source = src;
                a.target = dst;
            } else if (a.name != m.name && a.name.find(m.name) == std::string::npos) {
                a.name += "+" + m.name;
            }
            a.viewmaps.push_back(std::move(vm));
        }
    }

    for (std::size_t i = 0; i < s.objects.size(); ++i) {
        s.identity[i] = s.arrows.size();
        s.arrows.push_back({SketchArrow::Kind::Identity, "id_" + s.objects[i].name, i, i, {}, {}});
    }
    for (auto& [key, a] : merged) s.arrows.push_back(std::move(a));
    for (SketchArrow& a : helpers) s.arrows.push_back(std::move(a));
    for (std::size_t i = 1; i < s.objects.size(); ++i) {
        const SketchObject& o = s.objects[i];
        if (o.kind == SketchObject::Kind::Node && !o.constraints.empty()) {
            s.arrows.push_back({SketchArrow::Kind::Sentence, "phi_" + o.name, i, 0, {}, o.constraints});
        }
    }
    for (SketchArrow& a : sentences) s.arrows.push_back(std::move(a));
    if (!s.at_most_one_arrow()) throw SchemaError("sketch has parallel arrows between two objects");
    return s;
}

}  // namespace dbcat
