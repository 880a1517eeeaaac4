#include <gtest/gtest.h>

#include "dbcat/errors.hpp"
#include "dbcat/instance.hpp"

using namespace dbcat;

namespace {

Value v(std::int64_t x) { return Value::integer(x); }

Instance pair_instance() {
    return Instance({Relation("r", 2, {{v(1), v(2)}, {v(2), v(3)}}), Relation("s", 1, {{v(2)}})});
}

}  // namespace

TEST(Relation, RejectsTuplesOfTheWrongArity) {
    EXPECT_THROW(Relation("r", 2, {{v(1)}}), InvalidInstance);
    EXPECT_THROW(Relation("r", 0, {{}}), InvalidInstance);
}

TEST(Relation, DefaultAttributesAreColumnNames) {
    Relation r("r", 3);
    EXPECT_EQ(r.attributes(), (std::vector<std::string>{"c0", "c1", "c2"}));
}

TEST(Instance, RejectsDuplicateRelationNames) {
    EXPECT_THROW(Instance({Relation("r", 1), Relation("r", 2)}), InvalidInstance);
}

TEST(Instance, BottomHoldsOnlyTheEmptyRelation) {
    Instance b = Instance::bottom();
    ASSERT_EQ(b.relations().size(), 1u);
    EXPECT_TRUE(b.relations().begin()->second.is_bottom());
    EXPECT_TRUE(is_empty_isomorphic(b));
    EXPECT_TRUE(b.relation("⊥").empty());
}

TEST(Instance, EveryInstanceHasBottom) {
    Instance a = pair_instance();
    EXPECT_TRUE(a.relation(kBottomName).is_bottom());
    EXPECT_FALSE(a.has_relation("t"));
    EXPECT_THROW(a.relation("t"), MalformedQuery);
}

TEST(DisjointUnion, RenumbersComponentsAndQualifiesCollisions) {
    Instance a = pair_instance();
    UnionResult u = disjoint_union_mapped(a, a);
    const Instance& c = u.instance;
    EXPECT_EQ(c.components(), (std::vector<ComponentId>{1, 2}));
    EXPECT_EQ(u.left_names.at("r"), "r#1");
    EXPECT_EQ(u.right_names.at("r"), "r#2");
    EXPECT_EQ(c.component_of("r#1"), 1);
    EXPECT_EQ(c.component_of("s#2"), 2);
    EXPECT_EQ(c.relation("r#2").tuples(), a.relation("r").tuples());
    EXPECT_EQ(c.tuple_count(), 2 * a.tuple_count());
}

TEST(DisjointUnion, KeepsDistinctNamesAndNestsComponents) {
    Instance a({Relation("r", 1, {{v(1)}})});
    Instance b({Relation("s", 1, {{v(1)}})});
    Instance ab = disjoint_union(a, b);
    EXPECT_TRUE(ab.has_relation("r"));
    EXPECT_TRUE(ab.has_relation("s"));
    EXPECT_NE(ab.component_of("r"), ab.component_of("s"));
    Instance abc = disjoint_union(ab, Instance({Relation("t", 1)}));
    EXPECT_EQ(abc.components(), (std::vector<ComponentId>{1, 2, 3}));
}

TEST(DisjointUnion, BottomIsAUnit) {
    Instance a = pair_instance();
    Instance l = disjoint_union(a, Instance::bottom());
    Instance r = disjoint_union(Instance::bottom(), a);
    EXPECT_EQ(l.components().size(), 1u);
    EXPECT_EQ(r.components().size(), 1u);
    EXPECT_EQ(l.tuple_count(), a.tuple_count());
    EXPECT_EQ(disjoint_union(Instance::bottom(), Instance::bottom()), Instance::bottom());
}

TEST(FederatedUnion, PutsEverythingInOneComponent) {
    Instance a = pair_instance();
    UnionResult u = federated_union_mapped(a, a);
    EXPECT_EQ(u.instance.components(), (std::vector<ComponentId>{0}));
    EXPECT_EQ(u.left_names.at("s"), "s#1");
    EXPECT_EQ(u.right_names.at("s"), "s#2");
}

TEST(EmptyIsomorphic, DetectsInstancesWithOnlyEmptyRelations) {
    EXPECT_TRUE(is_empty_isomorphic(Instance({Relation("r", 2), Relation("s", 1)})));
    EXPECT_FALSE(is_empty_isomorphic(pair_instance()));
}

TEST(ActiveDomain, CollectsEveryValue) {
    EXPECT_EQ(active_domain(pair_instance()), (std::set<Value>{v(1), v(2), v(3)}));
    EXPECT_TRUE(active_domain(Instance::bottom()).empty());
}

TEST(Value, OrdersByKindThenLiteral) {
    EXPECT_LT(v(9), Value::string("a"));
    EXPECT_LT(Value::string("z"), Value::sentinel_a());
    EXPECT_LT(Value::sentinel_a(), Value::sentinel_b());
    EXPECT_EQ(Value::string("it's").to_string(), "'it\\'s'");
    EXPECT_EQ(Value::sentinel_b().to_string(), "#B");
}
