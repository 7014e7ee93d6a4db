#include "procevo/change_detection.hpp"
#include "procevo/error.hpp"
#include "procevo/generator.hpp"
#include "procevo/ingest.hpp"
#include "procevo/ntriples.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

namespace procevo {
namespace {

const ProcessSchema schema = ProcessSchema::default_schema();

Iri entity(std::string_view id) { return schema.entity_iri(id); }
Statement typed(std::string_view id, std::string_view type) {
    return {entity(id), schema.type_predicate(), schema.type_iri(type)};
}
Statement named(std::string_view id, std::string_view text) {
    return {entity(id), schema.predicate("name"), Literal(text)};
}
Statement rel(std::string_view from, std::string_view name, std::string_view to) {
    return {entity(from), schema.predicate(name), entity(to)};
}

ComparisonModel pair(const Graph& base, const Graph& target) {
    ComparisonModel cm = compare(base, target);
    cm.base_version = 1;
    cm.target_version = 2;
    return cm;
}

TEST(ChangeDetection, IdenticalVersionsHaveNoChanges) {
    const Graph g{typed("a", "Role"), named("a", "x")};
    const DetectionResult r = detect_changes(pair(g, g), schema);
    EXPECT_TRUE(r.records.empty());
    EXPECT_TRUE(r.warnings.empty());
}

TEST(ChangeDetection, AddedEntityWithEntailedRelation) {
    const Graph base{typed("m", "ProcessModule")};
    const Graph target{typed("m", "ProcessModule"), typed("a", "Activity"), named("a", "Plan"),
                       rel("m", "contains", "a")};
    const DetectionResult r = detect_changes(pair(base, target), schema);
    ASSERT_EQ(r.records.size(), 2u);
    EXPECT_EQ(r.records[0].kind, ChangeKind::EntityAdded);
    EXPECT_EQ(r.records[0].entity, entity("a"));
    EXPECT_EQ(r.records[1].kind, ChangeKind::RelationAdded);
    EXPECT_EQ(r.records[1].entity, entity("m"));
    EXPECT_EQ(r.records[1].related_entity, entity("a"));
    EXPECT_TRUE(r.records[1].entailed);
}

TEST(ChangeDetection, TextChangeCarriesFullValueSets) {
    const Statement d1{entity("a"), schema.predicate("description"), Literal("one")};
    const Statement d2{entity("a"), schema.predicate("description"), Literal("two")};
    const Statement d3{entity("a"), schema.predicate("description"), Literal("drei", "de")};
    const Graph base{typed("a", "Role"), d1, d2};
    const Graph target{typed("a", "Role"), d1, d3};
    const DetectionResult r = detect_changes(pair(base, target), schema);
    ASSERT_EQ(r.records.size(), 1u);
    EXPECT_EQ(r.records[0].kind, ChangeKind::TextPropertyChanged);
    EXPECT_EQ(r.records[0].old_values, (std::set<Literal>{Literal("one"), Literal("two")}));
    EXPECT_EQ(r.records[0].new_values, (std::set<Literal>{Literal("one"), Literal("drei", "de")}));
}

TEST(ChangeDetection, RelationBetweenSurvivorsIsNotEntailed) {
    const Graph base{typed("a", "Activity"), typed("r", "Role")};
    const Graph target{typed("a", "Activity"), typed("r", "Role"), rel("a", "responsible", "r")};
    const DetectionResult r = detect_changes(pair(base, target), schema);
    ASSERT_EQ(r.records.size(), 1u);
    EXPECT_FALSE(r.records[0].entailed);
}

TEST(ChangeDetection, SchemaViolationsAreWarnings) {
    const Graph base{typed("a", "Activity")};
    const Graph target{typed("a", "Role"), {entity("a"), Iri("urn:other#p"), Literal("x")},
                       {entity("a"), schema.predicate("uses"), Literal("lit")},
                       {entity("a"), schema.predicate("name"), entity("b")}};
    const DetectionResult r = detect_changes(pair(base, target), schema);
    EXPECT_TRUE(r.records.empty());
    EXPECT_EQ(r.warnings.size(), 5u);
}

TEST(ChangeDetection, ChangeOnlyModelIsRejected) {
    EXPECT_THROW(detect_changes(pair({}, {typed("a", "Role")}).changes_only(), schema), Error);
}

// Brute-force detector written from the pattern definitions, one statement
// scan per question.
std::vector<ChangeRecord> oracle(const Graph& base, const Graph& target) {
    auto subjects = [](const Graph& g) {
        std::set<Iri> out;
        for (const Statement& s : g) out.insert(s.subject);
        return out;
    };
    const std::set<Iri> in_base = subjects(base);
    const std::set<Iri> in_target = subjects(target);
    std::set<Iri> added, deleted;
    for (const Iri& e : in_target) if (!in_base.contains(e)) added.insert(e);
    for (const Iri& e : in_base) if (!in_target.contains(e)) deleted.insert(e);
    auto changed = [&](const Iri& e) { return added.contains(e) || deleted.contains(e); };

    std::vector<ChangeRecord> out;
    auto record = [](ChangeKind k, const Iri& e) {
        ChangeRecord r;
        r.from_version = 1;
        r.to_version = 2;
        r.kind = k;
        r.entity = e;
        return r;
    };
    for (const Iri& e : added) out.push_back(record(ChangeKind::EntityAdded, e));
    for (const Iri& e : deleted) out.push_back(record(ChangeKind::EntityDeleted, e));
    auto relations = [&](const Graph& from, const Graph& other, ChangeKind k) {
        for (const Statement& s : from) {
            if (other.contains(s) || !schema.is_relation(s.predicate) || !is_iri(s.object)) continue;
            ChangeRecord r = record(k, s.subject);
            r.property = s.predicate;
            r.related_entity = std::get<Iri>(s.object);
            r.entailed = changed(s.subject) || changed(*r.related_entity);
            out.push_back(r);
        }
    };
    relations(target, base, ChangeKind::RelationAdded);
    relations(base, target, ChangeKind::RelationDeleted);
    for (const Iri& e : in_base) {
        if (!in_target.contains(e)) continue;
        for (const std::string& p : schema.text_property_names) {
            const Iri pred = schema.predicate(p);
            auto values = [&](const Graph& g) {
                std::set<Literal> v;
                for (const Statement& s : g)
                    if (s.subject == e && s.predicate == pred && is_literal(s.object)) v.insert(std::get<Literal>(s.object));
                return v;
            };
            ChangeRecord r = record(ChangeKind::TextPropertyChanged, e);
            r.property = pred;
            r.old_values = values(base);
            r.new_values = values(target);
            if (r.old_values != r.new_values) out.push_back(r);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Graph random_model(testing::Random& rng) {
    static const std::vector<std::string> types = {"Activity", "Role", "Product"};
    static const std::vector<std::string> relations = {"uses", "produces", "responsible", "contains"};
    Graph g;
    for (int i = 0; i < 12; ++i) {
        if (testing::uniform(rng, 3) == 0) continue;
        const std::string id = "x" + std::to_string(i);
        g.insert(typed(id, types[testing::uniform(rng, types.size())]));
        for (std::size_t n = testing::uniform(rng, 3); n > 0; --n)
            g.insert({entity(id), schema.predicate(testing::uniform(rng, 2) ? "name" : "description"),
                      Literal("t" + std::to_string(testing::uniform(rng, 4)))});
        for (std::size_t n = testing::uniform(rng, 3); n > 0; --n)
            g.insert(rel(id, relations[testing::uniform(rng, relations.size())],
                         "x" + std::to_string(testing::uniform(rng, 12))));
    }
    return g;
}

TEST(ChangeDetection, AgreesWithBruteForce) {
    testing::Random rng(31);
    for (int round = 0; round < 300; ++round) {
        const Graph base = random_model(rng);
        const Graph target = testing::uniform(rng, 4) == 0 ? base : random_model(rng);
        const DetectionResult r = detect_changes(pair(base, target), schema);
        ASSERT_EQ(r.records, oracle(base, target)) << "round " << round;
    }
}

TEST(ChangeDetection, SwappingVersionsMirrorsRecords) {
    testing::Random rng(32);
    for (int round = 0; round < 100; ++round) {
        const Graph a = random_model(rng);
        const Graph b = random_model(rng);
        std::vector<ChangeRecord> forward = detect_changes(pair(a, b), schema).records;
        for (ChangeRecord& r : forward) {
            switch (r.kind) {
            case ChangeKind::EntityAdded: r.kind = ChangeKind::EntityDeleted; break;
            case ChangeKind::EntityDeleted: r.kind = ChangeKind::EntityAdded; break;
            case ChangeKind::RelationAdded: r.kind = ChangeKind::RelationDeleted; break;
            case ChangeKind::RelationDeleted: r.kind = ChangeKind::RelationAdded; break;
            case ChangeKind::TextPropertyChanged: std::swap(r.old_values, r.new_values); break;
            }
        }
        std::sort(forward.begin(), forward.end());
        EXPECT_EQ(detect_changes(pair(b, a), schema).records, forward);
    }
}

// Every changed statement is explained by an entity change, a relation
// record, a text record or a warning.
TEST(ChangeDetection, EveryChangedStatementIsAccountedFor) {
    testing::Random rng(33);
    for (int round = 0; round < 100; ++round) {
        Graph base = random_model(rng);
        Graph target = random_model(rng);
        if (round % 3 == 0) target.insert({entity("x1"), Iri("urn:other#odd"), Literal("?")});
        const ComparisonModel cm = pair(base, target);
        const DetectionResult r = detect_changes(cm, schema);
        std::set<Iri> entity_changes;
        std::set<std::pair<Iri, Iri>> text;
        std::set<Statement> relations;
        for (const ChangeRecord& c : r.records) {
            if (c.kind == ChangeKind::EntityAdded || c.kind == ChangeKind::EntityDeleted) entity_changes.insert(c.entity);
            if (c.kind == ChangeKind::TextPropertyChanged) text.emplace(c.entity, *c.property);
            if (c.kind == ChangeKind::RelationAdded || c.kind == ChangeKind::RelationDeleted)
                relations.insert({c.entity, *c.property, *c.related_entity});
        }
        std::set<Statement> warned;
        for (const SchemaWarning& w : r.warnings) warned.insert(w.statement);
        for (const Graph* side : {&cm.only_base(), &cm.only_target()})
            for (const Statement& s : *side) {
                const bool explained = entity_changes.contains(s.subject) || text.contains({s.subject, s.predicate}) ||
                                       relations.contains(s) || warned.contains(s);
                EXPECT_TRUE(explained) << ntriples::statement_line(s);
            }
    }
}

TEST(ChangeDetection, HistoryComparesConsecutiveStoredVersions) {
    VersionRepository repo;
    VersionMeta m;
    m.version = 1;
    repo.commit({typed("a", "Role")}, m);
    m.version = 3;
    repo.commit({typed("a", "Role"), typed("b", "Role")}, m);
    m.version = 4;
    repo.commit({typed("b", "Role")}, m);
    const DetectionResult r = detect_and_store_history(repo);
    ASSERT_EQ(r.records.size(), 2u);
    EXPECT_EQ(r.records[0].from_version, 1u);
    EXPECT_EQ(r.records[0].to_version, 3u);
    EXPECT_EQ(r.records[1].from_version, 3u);
    EXPECT_EQ(r.records[1].kind, ChangeKind::EntityDeleted);
    EXPECT_EQ(repo.load_change_records(), r.records);
}

TEST(ChangeDetection, GeneratedHistoryMatchesGroundTruth) {
    GeneratorConfig config;
    config.seed = 77;
    config.version_count = 30;
    config.malformed_versions = {9};
    testing::TempDir dir;
    const GeneratedHistory truth = generate_corpus(config, dir.path());
    IngestResult ingested = ingest_corpus(dir.path(), schema);
    const DetectionResult r = detect_history(ingested.repository);
    EXPECT_EQ(r.records, truth.ground_truth);
    EXPECT_TRUE(r.warnings.empty());
}

} // namespace
} // namespace procevo
