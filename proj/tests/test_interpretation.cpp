#include <gtest/gtest.h>

#include "dbcat/errors.hpp"
#include "dbcat/interpretation.hpp"
#include "support/systems.hpp"

using namespace dbcat;

namespace {

Value v(std::int64_t x) { return Value::integer(x); }
const Bound kFix = Bound::fixpoint(2);

const systems::System& sys() { return systems::three_nodes(); }
const Schema& schema(const std::string& n) { return *sys().ws.schemas.at(n); }

Interpretation alpha(std::set<Tuple> r, std::set<Tuple> s, std::set<Tuple> t) {
    Interpretation a;
    a.assign(schema("A"), Instance({Relation("r", 2, std::move(r))}));
    a.assign(schema("B"), Instance({Relation("s", 1, std::move(s))}));
    a.assign(schema("C"), Instance({Relation("t", 1, std::move(t))}));
    return a;
}

Interpretation good() { return alpha({{v(1), v(1)}, {v(2), v(1)}}, {{v(1)}, {v(2)}}, {{v(1)}, {v(2)}}); }

bool line_passes(const Report& r, const std::string& id) {
    for (const CheckLine& l : r.lines) {
        if (l.id == id) return l.pass;
    }
    ADD_FAILURE() << "no line " << id;
    return false;
}

}  // namespace

TEST(Interpretation, AssignValidatesAgainstTheSchema) {
    Interpretation a;
    EXPECT_THROW(a.assign(schema("B"), Instance({Relation("x", 1)})), InvalidInstance);
    EXPECT_THROW(a.assign(schema("B"), Instance({Relation("s", 2)})), InvalidInstance);
    EXPECT_THROW(a.assign(schema("B"), Instance({Relation("s", 1, {{Value::sentinel_a()}})})), InvalidInstance);
    a.assign(schema("B"), Instance());
    EXPECT_TRUE(a.at("B").has_relation("s"));
    EXPECT_THROW(a.at("C"), SchemaError);
}

TEST(Interpretation, TermsMapToUnions) {
    Interpretation a = good();
    Workspace ws = sys().ws;
    Instance sep = interpret_term(a, *SchemaTerm::sep(ws.term("B"), ws.term("C")));
    Instance fed = interpret_term(a, *SchemaTerm::fed(ws.term("B"), ws.term("C")));
    EXPECT_EQ(sep.components().size(), 2u);
    EXPECT_EQ(fed.components().size(), 1u);
    EXPECT_EQ(sep, disjoint_union(a.at("B"), a.at("C")));
    EXPECT_EQ(fed, federated_union(a.at("B"), a.at("C")));
    EXPECT_TRUE(is_empty_isomorphic(interpret_term(a, *SchemaTerm::empty())));
}

TEST(Interpretation, GammaObjectsAndHelpers) {
    const Sketch& s = sys().sketch;
    Interpretation a = good();
    Instance c = interpret_object(a, s, *s.find_object("C"));
    EXPECT_EQ(c.relation("u"), Relation("u", 1, {{v(1)}, {v(2)}}));
    auto hi = s.find_object("C_N_1");
    ASSERT_TRUE(hi.has_value());
    Instance h = interpret_object(a, s, *hi);
    const Relation& ch = h.relation("c_N_1");
    EXPECT_EQ(ch.arity(), 2u);
    for (const Tuple& t : ch.tuples()) EXPECT_TRUE(t.back() == Value::sentinel_a() || t.back() == Value::sentinel_b());
    EXPECT_EQ(ch.tuples().size(), 4u);
}

TEST(Interpretation, ModelReportNamesEachCheck) {
    ModelReport m = check_model(good(), *sys().graph, sys().sketch);
    EXPECT_TRUE(m.is_model) << m.report.first_failure()->id;
    EXPECT_TRUE(line_passes(m.report, "SCHEMA A"));
    EXPECT_TRUE(line_passes(m.report, "HELPER C_N_1"));
    EXPECT_TRUE(line_passes(m.report, "ARROW M"));

    ModelReport key = check_model(alpha({{v(1), v(1)}, {v(1), v(2)}}, {{v(1)}}, {{v(1)}}), *sys().graph, sys().sketch);
    EXPECT_FALSE(key.is_model);
    EXPECT_FALSE(line_passes(key.report, "SCHEMA A"));

    ModelReport helper = check_model(alpha({}, {{v(1)}}, {}), *sys().graph, sys().sketch);
    EXPECT_FALSE(helper.is_model);
    EXPECT_FALSE(line_passes(helper.report, "HELPER C_N_1"));
    EXPECT_TRUE(line_passes(helper.report, "ARROW M"));

    ModelReport missing = check_model(alpha({{v(1), v(1)}}, {}, {{v(1)}}), *sys().graph, sys().sketch);
    EXPECT_FALSE(missing.is_model);
    EXPECT_FALSE(line_passes(missing.report, "ARROW M"));

    Interpretation partial;
    partial.assign(schema("A"), Instance());
    EXPECT_THROW(check_model(partial, *sys().graph, sys().sketch), SchemaError);
}

TEST(Interpretation, UnsatisfiedSentenceBecomesTheMarker) {
    const Sketch& s = sys().sketch;
    Interpretation bad = alpha({{v(1), v(1)}, {v(1), v(2)}}, {{v(1)}}, {{v(1)}});
    ModelReport m = check_model(bad, *sys().graph, s);
    for (std::size_t i = 0; i < s.arrows.size(); ++i) {
        if (s.arrows[i].kind != SketchArrow::Kind::Sentence || s.arrows[i].source != *s.find_object("A")) continue;
        ArrowImage img = interpret_arrow(bad, s, i, m);
        ASSERT_TRUE(img.morphism.has_value());
        EXPECT_TRUE(img.morphism->is_marker());
        EXPECT_FALSE(img.problem.empty());
    }
}

TEST(Interpretation, FunctorLinesForAModel) {
    Report r = check_functor(good(), sys().sketch, kFix);
    EXPECT_TRUE(r.passed()) << r.first_failure()->id << ": " << r.first_failure()->detail;
    EXPECT_TRUE(line_passes(r, "IDENTITY A"));
    EXPECT_TRUE(line_passes(r, "ENDPOINTS M"));
    EXPECT_TRUE(line_passes(r, "FLUX phi_A"));
    Report laws = check_laws(good(), sys().sketch, kFix);
    EXPECT_FALSE(laws.lines.empty());
    EXPECT_TRUE(laws.passed()) << laws.first_failure()->id;
}

TEST(Interpretation, ModelIffFunctorOverTwoValues) {
    std::vector<Interpretation> all = systems::all_interpretations(2);
    ASSERT_EQ(all.size(), 256u);
    std::size_t models = 0;
    for (const Interpretation& a : all) {
        bool model = check_model(a, *sys().graph, sys().sketch).is_model;
        Report f = check_functor(a, sys().sketch, kFix);
        ASSERT_EQ(model, f.passed()) << (f.first_failure() ? f.first_failure()->id : "no failure");
        if (!model) continue;
        ++models;
        for (const char* node : {"A", "B", "C"}) {
            EXPECT_TRUE(check_gamma_iso(a, *sys().ws.term(node), sys().sketch, kFix)) << node;
        }
    }
    EXPECT_GT(models, 0u);
    EXPECT_LT(models, all.size());
}

TEST(Interpretation, GammaIsoNegativeControl) {
    Interpretation a = good();
    const Sketch& s = sys().sketch;
    Instance gamma = interpret_object(a, s, *s.find_object("C"));
    EXPECT_TRUE(instances_isomorphic(a.at("C"), gamma, kFix));
    Instance forged({a.at("C").relation("t"), Relation("u", 1, {{v(1)}, {v(3)}})});
    EXPECT_FALSE(instances_isomorphic(a.at("C"), forged, kFix));
}

TEST(Interpretation, SchemaIdentitiesMapToIsomorphicInstances) {
    Interpretation a = alpha({{v(1), v(2)}}, {{v(1)}}, {{v(2)}});
    const Workspace& ws = sys().ws;
    SchemaTermPtr A = ws.term("A"), B = ws.term("B"), C = ws.term("C"), E = SchemaTerm::empty();
    auto iso = [&](const SchemaTermPtr& x, const SchemaTermPtr& y) {
        return instances_isomorphic(interpret_term(a, *x), interpret_term(a, *y), kFix);
    };
    using T = SchemaTerm;
    EXPECT_TRUE(iso(T::sep(T::sep(A, B), C), T::sep(A, T::sep(B, C))));
    EXPECT_TRUE(iso(T::fed(T::fed(A, B), C), T::fed(A, T::fed(B, C))));
    EXPECT_TRUE(iso(T::sep(A, B), T::sep(B, A)));
    EXPECT_TRUE(iso(T::sep(A, E), A));
    EXPECT_TRUE(iso(T::fed(E, A), A));

    SchemaTermPtr lhs = T::fed(A, T::sep(B, C));
    SchemaTermPtr rhs = T::sep(T::fed(A, B), T::fed(A, C));
    EXPECT_TRUE(schema_identical(*lhs, *rhs));
    EXPECT_FALSE(iso(lhs, rhs));
    EXPECT_TRUE(schema_identical(*T::sep(A, A), *A));
    EXPECT_FALSE(iso(T::sep(A, A), A));
}
