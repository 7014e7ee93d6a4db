#include "procevo/change_record.hpp"
#include "procevo/error.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

namespace procevo {
namespace {

ChangeRecord random_record(testing::Random& rng) {
    ChangeRecord r;
    r.from_version = static_cast<VersionNumber>(1 + testing::uniform(rng, 50));
    r.to_version = r.from_version + 1 + static_cast<VersionNumber>(testing::uniform(rng, 3));
    r.kind = kAllChangeKinds[testing::uniform(rng, kAllChangeKinds.size())];
    r.entity = testing::pool_iri("e", testing::uniform(rng, 20));
    switch (r.kind) {
    case ChangeKind::EntityAdded:
    case ChangeKind::EntityDeleted:
        break;
    case ChangeKind::RelationAdded:
    case ChangeKind::RelationDeleted:
        r.property = testing::pool_iri("r", testing::uniform(rng, 3));
        r.related_entity = testing::pool_iri("e", testing::uniform(rng, 20));
        r.entailed = testing::uniform(rng, 2) == 0;
        break;
    case ChangeKind::TextPropertyChanged:
        r.property = testing::pool_iri("p", testing::uniform(rng, 3));
        for (std::size_t i = testing::uniform(rng, 3); i > 0; --i) r.old_values.insert(testing::random_literal(rng));
        for (std::size_t i = testing::uniform(rng, 3); i > 0; --i) r.new_values.insert(testing::random_literal(rng));
        if (r.old_values == r.new_values) r.new_values.insert(Literal("distinct"));
        if (r.old_values == r.new_values) r.old_values.clear();
        break;
    }
    return r;
}

TEST(ChangeRecord, KindNames) {
    for (ChangeKind k : kAllChangeKinds) EXPECT_EQ(parse_change_kind(to_string(k)), k);
    EXPECT_EQ(to_string(ChangeKind::TextPropertyChanged), "TextPropertyChanged");
    EXPECT_FALSE(parse_change_kind("Renamed"));
}

TEST(ChangeRecord, EntityAddedEncodesToFourStatements) {
    ChangeRecord r;
    r.from_version = 1;
    r.to_version = 2;
    r.kind = ChangeKind::EntityAdded;
    r.entity = Iri("urn:procevo:model:a1");
    const Graph g = encode_changes_as_graph({r});
    EXPECT_EQ(g.size(), 4u);
    for (const Statement& s : g) EXPECT_EQ(s.subject, change_node_iri(r));
    EXPECT_EQ(decode_changes_from_graph(g), std::vector<ChangeRecord>{r});
}

TEST(ChangeRecord, NodeIriDependsOnEveryField) {
    ChangeRecord a;
    a.kind = ChangeKind::TextPropertyChanged;
    a.from_version = 1;
    a.to_version = 2;
    a.entity = Iri("urn:x:a");
    a.property = Iri("urn:x:p");
    ChangeRecord b = a;
    b.new_values = {Literal("v")};
    ChangeRecord c = a;
    c.old_values = {Literal("v")};
    EXPECT_NE(change_node_iri(a), change_node_iri(b));
    EXPECT_NE(change_node_iri(b), change_node_iri(c));
    EXPECT_EQ(change_node_iri(a), change_node_iri(ChangeRecord(a)));
}

TEST(ChangeRecord, Validate) {
    ChangeRecord r;
    r.from_version = 1;
    r.to_version = 2;
    EXPECT_EQ(validate(r), "");
    r.property = Iri("urn:x:p");
    EXPECT_NE(validate(r), "");
    r.kind = ChangeKind::RelationAdded;
    EXPECT_NE(validate(r), ""); // no related entity
    r.related_entity = Iri("urn:x:b");
    EXPECT_EQ(validate(r), "");
    r.to_version = 1;
    EXPECT_NE(validate(r), "");
}

TEST(ChangeRecord, DecodeRejectsBrokenGraphs) {
    ChangeRecord r;
    r.from_version = 1;
    r.to_version = 2;
    r.entity = Iri("urn:x:a");
    Graph g = encode_changes_as_graph({r});
    Graph missing = g;
    missing.erase(*missing.begin());
    EXPECT_THROW(decode_changes_from_graph(missing), MalformedChangeGraph);
    Graph extra = g;
    extra.insert({change_node_iri(r), change_vocab::term("kind"), Literal("Nonsense")});
    EXPECT_THROW(decode_changes_from_graph(extra), MalformedChangeGraph);
}

TEST(ChangeRecord, CsvExample) {
    ChangeRecord r;
    r.from_version = 3;
    r.to_version = 4;
    r.kind = ChangeKind::TextPropertyChanged;
    r.entity = Iri("urn:x:a");
    r.property = Iri("urn:x:name");
    r.old_values = {Literal("a|b"), Literal("Tür", "de")};
    r.new_values = {Literal("")};
    const std::string csv = export_changes_csv({r});
    EXPECT_EQ(csv, std::string(kChangeCsvHeader) +
                       "\nTextPropertyChanged,3,4,urn:x:a,urn:x:name,,Tür@de|a\\|b,\\e,false\n");
    EXPECT_EQ(parse_changes_csv(csv), std::vector<ChangeRecord>{r});
}

TEST(ChangeRecord, CsvRejectsBadRows) {
    const std::string header(kChangeCsvHeader);
    EXPECT_THROW(parse_changes_csv("kind\n"), ParseError);
    EXPECT_THROW(parse_changes_csv(header + "\nRenamed,1,2,urn:x:a,,,,,false\n"), ParseError);
    EXPECT_THROW(parse_changes_csv(header + "\nEntityAdded,x,2,urn:x:a,,,,,false\n"), ParseError);
    EXPECT_THROW(parse_changes_csv(header + "\nEntityAdded,1,2,urn:x:a,,,,\n"), ParseError);
}

TEST(ChangeRecord, RandomRoundTrips) {
    testing::Random rng(21);
    for (int round = 0; round < 200; ++round) {
        std::vector<ChangeRecord> records;
        for (std::size_t i = testing::uniform(rng, 12); i > 0; --i) records.push_back(random_record(rng));
        std::vector<ChangeRecord> canonical = records;
        std::sort(canonical.begin(), canonical.end());
        canonical.erase(std::unique(canonical.begin(), canonical.end()), canonical.end());
        ASSERT_EQ(decode_changes_from_graph(encode_changes_as_graph(records)), canonical);
        ASSERT_EQ(parse_changes_csv(export_changes_csv(canonical)), canonical);
    }
}

} // namespace
} // namespace procevo
