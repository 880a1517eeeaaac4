#include "dbcat/interpretation.hpp"

#include <functional>
#include <set>

#include "dbcat/errors.hpp"

namespace dbcat {

void Interpretation::assign(const Schema& s, const Instance& a) {
    std::vector<Relation> rels;
    for (const auto& [name, r] : a.relations()) {
        if (r.is_bottom()) continue;
        auto it = s.relations.find(name);
        if (it == s.relations.end()) throw InvalidInstance("relation " + name + " is not in schema " + s.name);
        if (it->second != r.arity()) {
            throw InvalidInstance("relation " + name + " has arity " + std::to_string(it->second) + " in schema " +
                                  s.name);
        }
        for (const Tuple& t : r.tuples()) {
            for (const Value& v : t) {
                if (v.is_sentinel()) throw InvalidInstance("relation " + name + " holds a reserved sentinel value");
            }
        }
        rels.push_back(r);
    }
    for (const auto& [name, arity] : s.relations) {
        if (!a.has_relation(name)) rels.emplace_back(name, arity);
    }
    assignment_.insert_or_assign(s.name, Instance(std::move(rels)));
}

const Instance& Interpretation::at(const std::string& schema) const {
    auto it = assignment_.find(schema);
    if (it == assignment_.end()) throw SchemaError("schema " + schema + " has no assigned instance");
    return it->second;
}

Instance interpret_term(const Interpretation& alpha, const SchemaTerm& t) {
    switch (t.kind()) {
    case SchemaTerm::Kind::Empty:
        return Instance::bottom();
    case SchemaTerm::Kind::Atom:
        return alpha.at(t.schema()->name);
    case SchemaTerm::Kind::Fed:
        return federated_union(interpret_term(alpha, *t.left()), interpret_term(alpha, *t.right()));
    case SchemaTerm::Kind::Sep:
        return disjoint_union(interpret_term(alpha, *t.left()), interpret_term(alpha, *t.right()));
    }
    return {};
}

namespace {

struct SketchModel {
    std::vector<std::shared_ptr<const Instance>> objects;
    ModelReport model;
    std::vector<ArrowImage> images;
};

using NodeBase = std::function<Instance(const SchemaTerm&)>;

Instance object_instance(const NodeBase& node, const Sketch& s, std::size_t i,
                         const std::vector<std::shared_ptr<const Instance>>& done) {
    const SketchObject& o = s.objects.at(i);
    switch (o.kind) {
    case SketchObject::Kind::Empty:
        return Instance::bottom();
    case SketchObject::Kind::Node: {
        Instance base = node(*o.term);
        if (o.added.empty()) return base;
        std::vector<Relation> rels;
        std::map<std::string, ComponentId> part = base.partition();
        for (const auto& [name, r] : base.relations()) {
            if (!r.is_bottom()) rels.push_back(r);
        }
        part.erase(std::string(kBottomName));
        for (const GammaRelation& g : o.added) {
            if (g.definition) {
                rels.push_back(eval_rule(*g.definition, base).renamed(g.name));
            } else {
                rels.emplace_back(g.name, g.arity);
            }
            part[g.name] = g.component;
        }
        return Instance(std::move(rels), std::move(part));
    }
    case SketchObject::Kind::Helper: {
        auto src = o.helper_source < done.size() && done[o.helper_source]
                       ? *done[o.helper_source]
                       : object_instance(node, s, o.helper_source, done);
        auto tgt = o.helper_target < done.size() && done[o.helper_target]
                       ? *done[o.helper_target]
                       : object_instance(node, s, o.helper_target, done);
        std::set<Tuple> rows;
        auto tag = [&](const Relation& view, const Value& sentinel) {
            for (Tuple t : view.tuples()) {
                t.push_back(sentinel);
                rows.insert(std::move(t));
            }
        };
        tag(eval_rule(o.helper_source_query, src), Value::sentinel_a());
        tag(eval_rule(o.helper_target_query, tgt), Value::sentinel_b());
        return Instance({Relation(o.helper_relation, o.helper_k + 1, std::move(rows))});
    }
    }
    return {};
}

std::string verdict_id(const Sketch& s, std::size_t object) {
    const SketchObject& o = s.objects[object];
    return (o.kind == SketchObject::Kind::Helper ? "HELPER " : "SCHEMA ") + o.name;
}

ModelReport model_report(const Sketch& s, const std::vector<std::shared_ptr<const Instance>>& objects) {
    ModelReport m;
    for (std::size_t i = 1; i < s.objects.size(); ++i) {
        const SketchObject& o = s.objects[i];
        if (o.constraints.empty()) continue;
        const Instance& a = *objects[i];
        if (is_empty_isomorphic(a)) {
            m.report.add(verdict_id(s, i), true, "empty instance");
            continue;
        }
        std::optional<Violation> v = sentence_violation(o.constraints, a);
        m.report.add(verdict_id(s, i), !v, v ? v->constraint + " violated at " + to_string(v->witness) : "satisfied");
    }
    for (const SketchArrow& a : s.arrows) {
        if (a.kind != SketchArrow::Kind::Mapping && a.kind != SketchArrow::Kind::Helper) continue;
        try {
            make_atomic(a.viewmaps, objects[a.source], objects[a.target]);
            m.report.add("ARROW " + a.name, true, "view-map conditions hold");
        } catch (const ModeViolation& e) {
            m.report.add("ARROW " + a.name, false, e.what());
        }
    }
    m.report.sort();
    m.is_model = m.report.passed();
    return m;
}

bool verdict(const ModelReport& report, const std::string& id) {
    for (const CheckLine& l : report.report.lines) {
        if (l.id == id) return l.pass;
    }
    return true;
}

ArrowImage image_of(const Sketch& s, std::size_t idx, const std::vector<std::shared_ptr<const Instance>>& objects,
                    const ModelReport& report) {
    const SketchArrow& a = s.arrows.at(idx);
    switch (a.kind) {
    case SketchArrow::Kind::Identity:
        return {identity(objects[a.source]), {}};
    case SketchArrow::Kind::Sentence:
        if (verdict(report, verdict_id(s, a.source))) return {empty_morphism(objects[a.source], objects[0]), {}};
        return {marker_morphism(), "unsatisfied sentence mapped to id_⊥⁰"};
    case SketchArrow::Kind::Mapping:
    case SketchArrow::Kind::Helper:
        try {
            return {make_atomic(a.viewmaps, objects[a.source], objects[a.target]), {}};
        } catch (const ModeViolation& e) {
            return {std::nullopt, e.what()};
        }
    }
    return {};
}

SketchModel interpret_sketch(const Interpretation& alpha, const Sketch& s) {
    NodeBase node = [&](const SchemaTerm& t) { return interpret_term(alpha, t); };
    SketchModel sm;
    sm.objects.resize(s.objects.size());
    for (std::size_t i = 0; i < s.objects.size(); ++i) {
        if (s.objects[i].kind == SketchObject::Kind::Helper) continue;
        sm.objects[i] = std::make_shared<const Instance>(object_instance(node, s, i, sm.objects));
    }
    for (std::size_t i = 0; i < s.objects.size(); ++i) {
        if (s.objects[i].kind != SketchObject::Kind::Helper) continue;
        sm.objects[i] = std::make_shared<const Instance>(object_instance(node, s, i, sm.objects));
    }
    sm.model = model_report(s, sm.objects);
    for (std::size_t i = 0; i < s.arrows.size(); ++i) sm.images.push_back(image_of(s, i, sm.objects, sm.model));
    return sm;
}

}  // namespace

Instance interpret_object(const Interpretation& alpha, const Sketch& s, std::size_t object) {
    return object_instance([&](const SchemaTerm& t) { return interpret_term(alpha, t); }, s, object, {});
}

std::vector<Instance> interpret_objects(const Sketch& s, const std::function<Instance(const SchemaTerm&)>& node) {
    std::vector<std::shared_ptr<const Instance>> done(s.objects.size());
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < s.objects.size(); ++i) {
            if ((s.objects[i].kind == SketchObject::Kind::Helper) != (pass == 1)) continue;
            done[i] = std::make_shared<const Instance>(object_instance(node, s, i, done));
        }
    }
    std::vector<Instance> out;
    for (const auto& p : done) out.push_back(*p);
    return out;
}

ModelReport check_model(const Interpretation& alpha, const MappingGraph& g, const Sketch& s) {
    for (const SchemaTermPtr& node : g.nodes()) {
        for (const auto& leaf : node->leaves()) {
            if (!alpha.assigned(leaf->name)) throw SchemaError("schema " + leaf->name + " has no assigned instance");
        }
    }
    return interpret_sketch(alpha, s).model;
}

ArrowImage interpret_arrow(const Interpretation& alpha, const Sketch& s, std::size_t arrow, const ModelReport& report) {
    std::vector<std::shared_ptr<const Instance>> objects(s.objects.size());
    for (std::size_t i = 0; i < s.objects.size(); ++i) {
        objects[i] = std::make_shared<const Instance>(interpret_object(alpha, s, i));
    }
    return image_of(s, arrow, objects, report);
}

Report check_functor(const Interpretation& alpha, const Sketch& s, const Bound& bound) {
    SketchModel sm = interpret_sketch(alpha, s);
    Report r;
    auto valid = [&](std::size_t i) -> const Morphism* {
        const ArrowImage& img = sm.images[i];
        if (!img.morphism) return nullptr;
        const SketchArrow& a = s.arrows[i];
        if (img.morphism->source() != *sm.objects[a.source] || img.morphism->target() != *sm.objects[a.target]) {
            return nullptr;
        }
        return &*img.morphism;
    };

    for (std::size_t o = 0; o < s.objects.size(); ++o) {
        std::size_t ai = s.identity.at(o);
        const Morphism* img = valid(ai);
        bool ok = img && equivalent(*img, identity(sm.objects[o]), bound);
        r.add("IDENTITY " + s.objects[o].name, ok, ok ? "maps to the identity" : "identity not preserved");
    }
    for (std::size_t i = 0; i < s.arrows.size(); ++i) {
        const SketchArrow& a = s.arrows[i];
        if (a.kind == SketchArrow::Kind::Identity) continue;
        const Morphism* img = valid(i);
        std::string why = sm.images[i].problem.empty() ? "image endpoints differ from the objects' images"
                                                       : sm.images[i].problem;
        r.add("ENDPOINTS " + a.name, img != nullptr,
              img ? s.objects[a.source].name + " -> " + s.objects[a.target].name : why);
        if (!img) continue;
        if (a.kind == SketchArrow::Kind::Sentence) {
            r.add("FLUX " + a.name, img->flux(bound).only_bottom(), "sentence arrow transmits only ⊥");
        }
        const Morphism& id_src = *sm.images[s.identity.at(a.source)].morphism;
        const Morphism& id_dst = *sm.images[s.identity.at(a.target)].morphism;
        bool unit = equivalent(compose(id_dst, *img), *img, bound) && equivalent(compose(*img, id_src), *img, bound);
        r.add("UNIT " + a.name, unit, unit ? "id∘f ≈ f ≈ f∘id" : "unit law fails at " + bound.to_string());
    }
    for (std::size_t i = 0; i < s.arrows.size(); ++i) {
        const SketchArrow& f = s.arrows[i];
        if (f.kind == SketchArrow::Kind::Identity || !valid(i)) continue;
        for (std::size_t j = 0; j < s.arrows.size(); ++j) {
            const SketchArrow& g = s.arrows[j];
            if (g.kind == SketchArrow::Kind::Identity || g.source != f.target || !valid(j)) continue;
            std::string id = "COMPOSE " + g.name + "∘" + f.name;
            Morphism gf = compose(*valid(j), *valid(i));
            Flux expected = Flux::compose(valid(i)->flux(bound), valid(j)->flux(bound));
            bool ok = gf.flux(bound) == expected;
            std::string detail = "flux of the composite is the intersection";
            if (ok && g.target == 0) {
                ok = gf.flux(bound).only_bottom();
                for (std::size_t k = 0; ok && k < s.arrows.size(); ++k) {
                    const SketchArrow& d = s.arrows[k];
                    if (d.kind == SketchArrow::Kind::Identity || d.source != f.source || d.target != 0) continue;
                    const Morphism* direct = valid(k);
                    ok = direct && equivalent(*direct, gf, bound);
                }
                detail = ok ? "parallel arrows into A_∅ agree" : "parallel arrows into A_∅ disagree";
            }
            r.add(id, ok, detail);
        }
    }
    r.sort();
    return r;
}

Report check_laws(const Interpretation& alpha, const Sketch& s, const Bound& bound) {
    SketchModel sm = interpret_sketch(alpha, s);
    Report r;
    std::vector<std::size_t> usable;
    for (std::size_t i = 0; i < s.arrows.size(); ++i) {
        if (sm.images[i].morphism && !sm.images[i].morphism->is_marker()) usable.push_back(i);
    }
    auto composable = [&](std::size_t g, std::size_t f) { return s.arrows[g].source == s.arrows[f].target; };
    for (std::size_t f : usable) {
        for (std::size_t g : usable) {
            if (!composable(g, f)) continue;
            const Morphism& mf = *sm.images[f].morphism;
            const Morphism& mg = *sm.images[g].morphism;
            std::string gf_name = s.arrows[g].name + "∘" + s.arrows[f].name;
            Morphism gf = compose(mg, mf);
            Flux fl = gf.flux(bound);
            r.add("FLUX.SUBSET " + gf_name, fl.subset_by_source(mf.flux(bound)) && fl.subset_by_target(mg.flux(bound)),
                  "flux of the composite lies in both factors");
            r.add("FLUX.MEET " + gf_name, fl == Flux::compose(mf.flux(bound), mg.flux(bound)),
                  "flux of the composite is the intersection");
            for (std::size_t h : usable) {
                if (!composable(h, g)) continue;
                const Morphism& mh = *sm.images[h].morphism;
                bool ok = equivalent(compose(mh, gf), compose(compose(mh, mg), mf), bound);
                r.add("ASSOC " + s.arrows[h].name + "∘" + gf_name, ok,
                      ok ? "(h∘g)∘f ≈ h∘(g∘f)" : "associativity fails at " + bound.to_string());
            }
        }
    }
    r.sort();
    return r;
}

bool check_gamma_iso(const Interpretation& alpha, const SchemaTerm& a, const Sketch& s, const Bound& bound) {
    std::optional<std::size_t> idx = s.find_object(a.to_string());
    if (!idx) throw SchemaError("sketch has no object " + a.to_string());
    return instances_isomorphic(interpret_term(alpha, a), interpret_object(alpha, s, *idx), bound);
}

}  // namespace dbcat
