#include "procevo/graph.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <iterator>
#include <set>

namespace procevo {
namespace {

using testing::Random;

const Statement s1{Iri("urn:e1"), Iri("urn:p"), Iri("urn:x")};
const Statement s2{Iri("urn:e2"), Iri("urn:p"), Literal("y")};
const Statement s3{Iri("urn:e3"), Iri("urn:q"), Literal("z", "en")};

std::set<Statement> as_set(const Graph& g) { return {g.begin(), g.end()}; }

TEST(GraphInsert, Examples) {
    auto [g1, new1] = insert(Graph{}, s1);
    EXPECT_TRUE(new1);
    EXPECT_EQ(g1, (Graph{s1}));

    auto [g2, new2] = insert(g1, s1);
    EXPECT_FALSE(new2);
    EXPECT_EQ(g2, (Graph{s1}));

    auto [g3, new3] = insert(g1, s2);
    EXPECT_TRUE(new3);
    EXPECT_EQ(g3, (Graph{s1, s2}));
    EXPECT_EQ(g1, (Graph{s1})) << "value insert must not modify its argument";
}

TEST(GraphInsert, NfcEquivalentLiteralsCollapse) {
    Graph g;
    EXPECT_TRUE(g.insert({Iri("urn:a"), Iri("urn:p"), Literal("cafe\xCC\x81")}));
    EXPECT_FALSE(g.insert({Iri("urn:a"), Iri("urn:p"), Literal("caf\xC3\xA9")}));
    EXPECT_EQ(g.size(), 1u);
}

TEST(GraphDifference, Examples) {
    EXPECT_EQ(difference(Graph{s1, s2}, Graph{s2, s3}), (Graph{s1}));
    const Graph g{s1, s2, s3};
    EXPECT_TRUE(difference(g, g).empty());
    EXPECT_EQ(difference(g, Graph{}), g);
}

TEST(GraphStatementsWithSubject, Examples) {
    EXPECT_TRUE(statements_with_subject(Graph{}, Iri("urn:e1")).empty());
    const Statement a{Iri("urn:e1"), Iri("urn:p"), Iri("urn:x")};
    const Statement b{Iri("urn:e2"), Iri("urn:p"), Iri("urn:y")};
    EXPECT_EQ(statements_with_subject(Graph{a, b}, Iri("urn:e1")), std::vector<Statement>{a});
}

TEST(GraphStatementsWithSubject, MatchesLinearScan) {
    Random rng(11);
    for (int round = 0; round < 20; ++round) {
        const Graph g = testing::random_graph(rng, 200);
        for (std::size_t i = 0; i < 32; ++i) {
            const Iri subject = testing::pool_iri("s", i);
            std::vector<Statement> expected;
            for (const Statement& s : g)
                if (s.subject == subject) expected.push_back(s);
            EXPECT_EQ(statements_with_subject(g, subject), expected);
        }
    }
}

TEST(GraphProperties, SetOperationLaws) {
    Random rng(12);
    for (int round = 0; round < 200; ++round) {
        const Graph a = testing::random_graph(rng, testing::uniform(rng, 80), 10);
        const Graph b = testing::random_graph(rng, testing::uniform(rng, 80), 10);
        const std::set<Statement> sa = as_set(a), sb = as_set(b);
        std::set<Statement> uni, inter, da, db;
        std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(uni, uni.end()));
        std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(inter, inter.end()));
        std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(da, da.end()));
        std::set_difference(sb.begin(), sb.end(), sa.begin(), sa.end(), std::inserter(db, db.end()));

        EXPECT_EQ(as_set(graph_union(a, b)), uni);
        EXPECT_EQ(as_set(intersection(a, b)), inter);
        EXPECT_EQ(as_set(difference(a, b)), da);
        EXPECT_EQ(graph_union(a, b).size(), a.size() + b.size() - intersection(a, b).size());
        EXPECT_EQ(da.size() + inter.size() + db.size(), uni.size());
    }
}

TEST(GraphProperties, InsertOrderIndependent) {
    Random rng(13);
    std::vector<Statement> items;
    for (int i = 0; i < 100; ++i) items.push_back(testing::random_statement(rng));
    items.insert(items.end(), items.begin(), items.begin() + 20); // duplicates
    Graph reference;
    for (const Statement& s : items) reference.insert(s);
    for (int round = 0; round < 20; ++round) {
        std::shuffle(items.begin(), items.end(), rng);
        Graph g;
        for (const Statement& s : items) g.insert(s);
        EXPECT_EQ(g, reference);
    }
}

} // namespace
} // namespace procevo
