#include <gtest/gtest.h>

#include "dbcat/dsl.hpp"
#include "dbcat/errors.hpp"
#include "dbcat/schema.hpp"

using namespace dbcat;

namespace {

using T = SchemaTerm;

const Workspace& ws() {
    static const Workspace w = parse_text(R"(
schema A {
  r/2.
  constraint forall K,V,W: r(K,V), r(K,W) => V = W.
}
schema B { s/1. }
schema C { r/1. }

mapping M1 : A -> B { q(X) :- r(X,Y) => s(X). }
mapping M2 : A -> C { q(X) :- r(X,X) => r(X). }
mapping M3 : B -> C { q(X) :- s(X) => r(X). }
mapping Fresh : A -> B { q(X) :- r(X,Y) => u(X) :- s(X). }
mapping Bare : A -> B { q(X) :- r(X,Y) => w(X). }
mapping Help : A -> B { q(X) :- r(X,Y) => _(X) :- s(X), s(X). }
mapping Two : A -> B { q(X) :- r(X,Y) => s(X). q(Y) :- r(X,Y) => s(Y). }
mapping Nil : A -> C { }
)");
    return w;
}

SchemaTermPtr leaf(const std::string& n) { return ws().term(n); }

std::vector<SchemaTermPtr> terms_up_to(std::size_t depth) {
    std::vector<SchemaTermPtr> out{leaf("A"), leaf("B"), leaf("C"), T::empty()};
    for (std::size_t d = 0; d < depth; ++d) {
        std::vector<SchemaTermPtr> next = out;
        for (const auto& x : out) {
            for (const auto& y : out) {
                next.push_back(T::sep(x, y));
                next.push_back(T::fed(x, y));
            }
        }
        out = std::move(next);
    }
    return out;
}

bool same(const SchemaTermPtr& a, const SchemaTermPtr& b) { return schema_identical(*a, *b); }

MappingGraph graph_of(std::initializer_list<const char*> names) {
    MappingGraph g;
    g.name = "G";
    for (const char* n : names) g.mappings.push_back(ws().mapping(n));
    return g;
}

std::size_t count_kind(const Sketch& s, SketchArrow::Kind k) {
    return std::count_if(s.arrows.begin(), s.arrows.end(), [&](const SketchArrow& a) { return a.kind == k; });
}

}  // namespace

TEST(Schema, ValidationRejectsBadConstraints) {
    Schema s{"S", {{"r", 2}}, {}};
    EXPECT_NO_THROW(s.validate());
    s.constraints.push_back(parse_text("schema X { r/2. constraint forall X,Y: r(X,Y) => r(Y,X). }")
                                .schemas.at("X")
                                ->constraints.front());
    EXPECT_NO_THROW(s.validate());
    Schema wrong{"S", {{"r", 1}}, s.constraints};
    EXPECT_THROW(wrong.validate(), SchemaError);
    Schema zero{"S", {{"r", 0}}, {}};
    EXPECT_THROW(zero.validate(), SchemaError);
}

TEST(SchemaAlgebra, EmptyHasNoSymbols) {
    EXPECT_TRUE(T::empty()->qualified_relations().empty());
    EXPECT_TRUE(T::empty()->qualified_constraints().empty());
    EXPECT_EQ(T::empty()->depth(), 0u);
}

TEST(SchemaAlgebra, SymbolsAreQualifiedPerLeaf) {
    SchemaTermPtr ac = T::sep(leaf("A"), leaf("C"));
    EXPECT_EQ(ac->qualified_relations(), (std::set<std::string>{"A.r/2", "C.r/1"}));
    EXPECT_EQ(ac->qualified_constraints().size(), 1u);
    Flattened f = flatten(*ac);
    EXPECT_EQ(f.skeleton.components().size(), 2u);
    EXPECT_EQ(f.skeleton.relation("r#1").arity(), 2u);
    EXPECT_EQ(f.skeleton.relation("r#2").arity(), 1u);
    Flattened g = flatten(*T::fed(leaf("A"), leaf("C")));
    EXPECT_EQ(g.skeleton.components().size(), 1u);
    EXPECT_FALSE(same(ac, leaf("A")));
}

TEST(SchemaAlgebra, UnitLawsOnAllSmallTerms) {
    for (const auto& x : terms_up_to(2)) {
        EXPECT_TRUE(same(T::sep(x, T::empty()), x)) << x->to_string();
        EXPECT_TRUE(same(T::sep(T::empty(), x), x)) << x->to_string();
        EXPECT_TRUE(same(T::fed(x, T::empty()), x)) << x->to_string();
        EXPECT_TRUE(same(T::fed(T::empty(), x), x)) << x->to_string();
    }
}

TEST(SchemaAlgebra, AssociativityAndDistributionOnAllSmallTerms) {
    std::vector<SchemaTermPtr> small = terms_up_to(1);
    std::size_t checked = 0;
    for (const auto& x : small) {
        for (const auto& y : small) {
            for (const auto& z : small) {
                ASSERT_TRUE(same(T::sep(T::sep(x, y), z), T::sep(x, T::sep(y, z))));
                ASSERT_TRUE(same(T::fed(T::fed(x, y), z), T::fed(x, T::fed(y, z))));
                ASSERT_TRUE(same(T::fed(x, T::sep(y, z)), T::sep(T::fed(x, y), T::fed(x, z))));
                ++checked;
            }
        }
    }
    EXPECT_EQ(checked, small.size() * small.size() * small.size());
}

TEST(SchemaAlgebra, PrintsLeftAssociative) {
    SchemaTermPtr t = T::sep(T::fed(leaf("A"), leaf("B")), T::sep(leaf("C"), T::empty()));
    EXPECT_EQ(t->to_string(), "A fed B sep (C sep empty)");
    EXPECT_EQ(t->depth(), 2u);
    EXPECT_TRUE(same(parse_term(ws(), t->to_string()), t));
}

TEST(Paths, SequentialCompositionIsAssociative) {
    GraphPath m1 = path_of(ws().mapping("M1"));
    GraphPath m3 = path_of(ws().mapping("M3"));
    GraphPath idc = identity_path(leaf("C"));
    GraphPath left = seq_compose(seq_compose(idc, m3), m1);
    GraphPath right = seq_compose(idc, seq_compose(m3, m1));
    EXPECT_EQ(left, right);
    EXPECT_EQ(left.steps, (std::vector<std::string>{"M1", "M3"}));
    EXPECT_EQ(seq_compose(m1, identity_path(leaf("A"))), m1);
    EXPECT_EQ(seq_compose(identity_path(leaf("B")), m1), m1);
    EXPECT_THROW(seq_compose(m1, m3), CompositionMismatch);
}

TEST(Branch, UnitesPairsIntoASeparatedTarget) {
    const SchemaMapping& m1 = ws().mapping("M1");
    const SchemaMapping& m2 = ws().mapping("M2");
    SchemaMapping b = branch(m1, m2);
    EXPECT_EQ(b.source, m1.source);
    EXPECT_TRUE(same(b.target, T::sep(leaf("B"), leaf("C"))));
    ASSERT_EQ(b.pairs.size(), 2u);
    std::set<std::string> targets;
    for (const MappingPair& p : b.pairs) targets.insert(p.target_atom.relation);
    EXPECT_EQ(targets, (std::set<std::string>{"s", "r"}));

    SchemaMapping c = branch(m2, m1);
    EXPECT_TRUE(same(b.target, c.target));
    EXPECT_EQ(b.pairs.size(), c.pairs.size());

    SchemaMapping nil = branch(m1, ws().mapping("Nil"));
    EXPECT_EQ(nil.pairs.size(), m1.pairs.size());
    EXPECT_THROW(branch(m1, ws().mapping("M3")), CompositionMismatch);
}

TEST(Branch, CollidingTargetNamesAreQualified) {
    SchemaMapping same_target = branch(ws().mapping("M2"), ws().mapping("M2"));
    ASSERT_EQ(same_target.pairs.size(), 2u);
    EXPECT_NE(same_target.pairs[0].target_atom.relation, same_target.pairs[1].target_atom.relation);
}

TEST(Pairs, AreClassified) {
    EXPECT_EQ(ws().mapping("M1").pairs[0].kind, MappingPair::Kind::Direct);
    EXPECT_EQ(ws().mapping("Fresh").pairs[0].kind, MappingPair::Kind::Fresh);
    EXPECT_EQ(ws().mapping("Bare").pairs[0].kind, MappingPair::Kind::Fresh);
    EXPECT_EQ(ws().mapping("Help").pairs[0].kind, MappingPair::Kind::Helper);
    std::set<std::string> target{"s"};
    EXPECT_THROW(make_pair(parse_rule("q(X) :- r(X,Y)"), parse_rule("s(X) :- s(X)"), target), SchemaError);
    EXPECT_THROW(make_pair(parse_rule("q(X,Y) :- r(X,Y)"), parse_rule("_(X) :- s(X)"), target), SchemaError);
}

TEST(Sketch, EmptyGraphHasOnlyTheEmptyObject) {
    Sketch s = build_sketch(MappingGraph{});
    ASSERT_EQ(s.objects.size(), 1u);
    EXPECT_EQ(s.objects[0].kind, SketchObject::Kind::Empty);
    ASSERT_EQ(s.arrows.size(), 1u);
    EXPECT_EQ(s.arrows[0].kind, SketchArrow::Kind::Identity);
    EXPECT_EQ(s.identity.at(0), 0u);
    EXPECT_TRUE(s.diagrams.empty());
    EXPECT_TRUE(s.cones.empty());
}

TEST(Sketch, DirectMappingGivesOneArrowAndSentences) {
    Sketch s = build_sketch(graph_of({"M1"}));
    EXPECT_EQ(s.objects.size(), 3u);
    EXPECT_EQ(count_kind(s, SketchArrow::Kind::Identity), 3u);
    EXPECT_EQ(count_kind(s, SketchArrow::Kind::Mapping), 1u);
    ASSERT_EQ(count_kind(s, SketchArrow::Kind::Sentence), 1u);
    const SketchArrow& phi = s.arrows.back();
    EXPECT_EQ(phi.source, *s.find_object("A"));
    EXPECT_EQ(phi.target, s.empty_object());
    for (const auto& [obj, arrow] : s.identity) {
        EXPECT_EQ(s.arrows[arrow].source, obj);
        EXPECT_EQ(s.arrows[arrow].target, obj);
    }
}

TEST(Sketch, FreshRelationIsAddedToTheTarget) {
    Sketch s = build_sketch(graph_of({"Fresh"}));
    const SketchObject& b = s.objects[*s.find_object("B")];
    ASSERT_EQ(b.added.size(), 1u);
    EXPECT_EQ(b.added[0].name, "u");
    EXPECT_EQ(b.added[0].arity, 1u);
    ASSERT_TRUE(b.added[0].definition.has_value());
    EXPECT_EQ(count_kind(s, SketchArrow::Kind::Mapping), 1u);
    EXPECT_EQ(count_kind(s, SketchArrow::Kind::Helper), 0u);

    Sketch bare = build_sketch(graph_of({"Bare"}));
    const SketchObject& bb = bare.objects[*bare.find_object("B")];
    ASSERT_EQ(bb.added.size(), 1u);
    EXPECT_FALSE(bb.added[0].definition.has_value());
}

TEST(Sketch, HelperSchemaForQueryTargets) {
    Sketch s = build_sketch(graph_of({"Help"}));
    auto hi = s.find_object("C_Help_1");
    ASSERT_TRUE(hi.has_value());
    const SketchObject& h = s.objects[*hi];
    EXPECT_EQ(h.kind, SketchObject::Kind::Helper);
    EXPECT_EQ(h.helper_relation, "c_Help_1");
    EXPECT_EQ(h.helper_k, 1u);
    ASSERT_EQ(h.constraints.size(), 1u);
    EXPECT_EQ(h.constraints[0], Constraint(sentinel_tgd("c_Help_1", 1)));
    EXPECT_EQ(count_kind(s, SketchArrow::Kind::Mapping), 0u);
    EXPECT_EQ(count_kind(s, SketchArrow::Kind::Helper), 2u);
    std::size_t into_helper = 0;
    for (const SketchArrow& a : s.arrows) {
        if (a.kind != SketchArrow::Kind::Helper) continue;
        EXPECT_EQ(a.target, *hi);
        ASSERT_EQ(a.viewmaps.size(), 1u);
        EXPECT_EQ(a.viewmaps[0].target_fixed.size(), 1u);
        EXPECT_EQ(a.viewmaps[0].target_fixed[0].first, 1u);
        ++into_helper;
    }
    EXPECT_EQ(into_helper, 2u);
    bool phi = false;
    for (const SketchArrow& a : s.arrows) phi |= a.kind == SketchArrow::Kind::Sentence && a.source == *hi;
    EXPECT_TRUE(phi);
}

TEST(Sketch, ParallelMappingsAreMerged) {
    Sketch s = build_sketch(graph_of({"M1", "Two"}));
    EXPECT_TRUE(s.at_most_one_arrow());
    ASSERT_EQ(count_kind(s, SketchArrow::Kind::Mapping), 1u);
    for (const SketchArrow& a : s.arrows) {
        if (a.kind == SketchArrow::Kind::Mapping) EXPECT_EQ(a.viewmaps.size(), 3u);
    }
}

TEST(Sketch, RejectsMalformedPairs) {
    SchemaMapping m = ws().mapping("M1");
    m.pairs[0].target_atom.relation = "t";
    MappingGraph g;
    g.mappings.push_back(m);
    EXPECT_THROW(build_sketch(g), SchemaError);

    SchemaMapping cross = ws().mapping("M1");
    cross.source = T::sep(leaf("A"), leaf("C"));
    MappingGraph h;
    cross.pairs[0].source_query = parse_rule("q(X) :- r#1(X,Y), r#2(X)");
    h.mappings.push_back(cross);
    EXPECT_THROW(build_sketch(h), SchemaError);
}
