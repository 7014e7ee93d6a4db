#include "procevo/error.hpp"
#include "procevo/ntriples.hpp"
#include "procevo/version_repository.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <map>

namespace procevo {
namespace {

VersionMeta meta(VersionNumber v, std::string timestamp = {}) {
    VersionMeta m;
    m.version = v;
    m.timestamp = std::move(timestamp);
    m.author = "anna";
    m.comment = "c" + std::to_string(v);
    return m;
}

TEST(Repository, CommitThenCheckout) {
    testing::Random rng(3);
    VersionRepository repo;
    const Graph g = testing::random_graph(rng, 40);
    EXPECT_EQ(repo.commit(g, meta(1)), 1u);
    EXPECT_EQ(repo.checkout(1), g);
    EXPECT_TRUE(repo.is_snapshot(1));
}

TEST(Repository, IdenticalVersionHasEmptyDelta) {
    testing::Random rng(4);
    VersionRepository repo;
    const Graph g = testing::random_graph(rng, 40);
    repo.commit(g, meta(1));
    repo.commit(g, meta(2));
    EXPECT_EQ(repo.checkout(2), g);
    for (const auto& [name, content] : repo.files())
        if (name == version_file_stem(2) + ".delta") {
            EXPECT_EQ(content, "");
        }
}

TEST(Repository, OrderingErrors) {
    VersionRepository repo;
    EXPECT_THROW(repo.commit({}, meta(0)), NonMonotonicVersion);
    repo.commit({}, meta(5));
    EXPECT_THROW(repo.commit({}, meta(5)), DuplicateVersion);
    EXPECT_THROW(repo.commit({}, meta(3)), NonMonotonicVersion);
    EXPECT_THROW(repo.commit({}, meta(6, "yesterday")), Error);
}

TEST(Repository, GapsAreUnknownVersions) {
    VersionRepository repo;
    repo.commit({}, meta(1));
    repo.commit({}, meta(3));
    EXPECT_THROW(repo.checkout(2), UnknownVersion);
    EXPECT_THROW(repo.checkout(4), UnknownVersion);
    EXPECT_FALSE(repo.contains(2));
}

TEST(Repository, OutOfOrderTimestampsAreFlagged) {
    VersionRepository repo;
    repo.commit({}, meta(1, "2005-01-02T00:00:00Z"));
    repo.commit({}, meta(2, "2005-01-01T00:00:00Z"));
    EXPECT_FALSE(repo.timestamp_out_of_order(1));
    EXPECT_TRUE(repo.timestamp_out_of_order(2));
}

TEST(Repository, RandomWalkMatchesStoredCopies) {
    testing::Random rng(11);
    VersionRepository repo;
    std::map<VersionNumber, Graph> oracle;
    Graph g = testing::random_graph(rng, 80);
    VersionNumber v = 0;
    for (int i = 0; i < 100; ++i) {
        v += 1 + static_cast<VersionNumber>(testing::uniform(rng, 3));
        g = testing::mutate(rng, g, testing::uniform(rng, 6), testing::uniform(rng, 6));
        repo.commit(g, meta(v));
        oracle.emplace(v, g);
    }
    for (const auto& [version, graph] : oracle) {
        ASSERT_EQ(repo.checkout(version), graph) << "version " << version;
        EXPECT_LT(repo.replay_length(version), VersionRepository::kSnapshotInterval);
    }
    std::size_t visited = 0;
    repo.for_each_version([&](const VersionMeta& m, const Graph& graph) {
        EXPECT_EQ(graph, oracle.at(m.version));
        ++visited;
    });
    EXPECT_EQ(visited, oracle.size());
}

TEST(Repository, SnapshotPositions) {
    VersionRepository repo;
    for (VersionNumber v = 1; v <= 45; ++v) repo.commit({}, meta(v));
    EXPECT_TRUE(repo.is_snapshot(1));
    EXPECT_TRUE(repo.is_snapshot(21));
    EXPECT_TRUE(repo.is_snapshot(41));
    EXPECT_FALSE(repo.is_snapshot(20));
    EXPECT_EQ(repo.replay_length(20), 19u);
    EXPECT_EQ(repo.replay_length(41), 0u);
}

ChangeRecord text_change(VersionNumber from, VersionNumber to, std::size_t entity) {
    ChangeRecord r;
    r.from_version = from;
    r.to_version = to;
    r.kind = ChangeKind::TextPropertyChanged;
    r.entity = testing::pool_iri("e", entity);
    r.property = Iri("urn:procevo:schema#name");
    r.old_values = {Literal("old" + std::to_string(entity))};
    r.new_values = {Literal("new" + std::to_string(to))};
    return r;
}

TEST(Repository, ChangeRecordFiltersMatchBruteForce) {
    testing::Random rng(12);
    VersionRepository repo;
    for (VersionNumber v = 1; v <= 50; ++v) repo.commit({}, meta(v));
    std::vector<ChangeRecord> records;
    for (int i = 0; i < 1000; ++i) {
        const auto to = static_cast<VersionNumber>(2 + testing::uniform(rng, 49));
        ChangeRecord r = text_change(to - 1, to, testing::uniform(rng, 100));
        const std::size_t kind = testing::uniform(rng, 3);
        if (kind == 1) {
            r.kind = ChangeKind::EntityAdded;
            r.property.reset();
            r.old_values.clear();
            r.new_values.clear();
        } else if (kind == 2) {
            r.kind = ChangeKind::RelationAdded;
            r.property = Iri("urn:procevo:schema#uses");
            r.related_entity = testing::pool_iri("e", testing::uniform(rng, 100));
            r.old_values.clear();
            r.new_values.clear();
        }
        records.push_back(r);
    }
    repo.store_change_records(records);
    repo.store_change_records(records); // idempotent

    std::sort(records.begin(), records.end());
    records.erase(std::unique(records.begin(), records.end()), records.end());
    EXPECT_EQ(repo.load_change_records(), records);

    for (int i = 0; i < 20; ++i) {
        ChangeFilter filter;
        const auto first = static_cast<VersionNumber>(1 + testing::uniform(rng, 50));
        const auto last = static_cast<VersionNumber>(first + testing::uniform(rng, 20));
        filter.first_version = first;
        filter.last_version = last;
        if (i % 2 == 0) filter.kinds = std::set<ChangeKind>{ChangeKind::EntityAdded, ChangeKind::RelationAdded};
        std::vector<ChangeRecord> expected;
        for (const ChangeRecord& r : records)
            if (r.from_version >= first && r.to_version <= last && (!filter.kinds || filter.kinds->contains(r.kind)))
                expected.push_back(r);
        EXPECT_EQ(repo.load_change_records(filter), expected);
    }
}

TEST(Repository, RecordsMustReferenceStoredVersions) {
    VersionRepository repo;
    repo.commit({}, meta(1));
    EXPECT_FALSE(repo.has_change_records());
    EXPECT_THROW(repo.store_change_records({text_change(1, 2, 0)}), UnknownVersion);
    repo.store_change_records({});
    EXPECT_TRUE(repo.has_change_records());
}

TEST(Repository, ModuleFilterUsesContainment) {
    const Iri contains("urn:procevo:schema#contains");
    const Iri m("urn:procevo:model:m1");
    VersionRepository repo;
    repo.commit(Graph{{m, contains, testing::pool_iri("e", 1)}}, meta(1));
    repo.commit(Graph{{m, contains, testing::pool_iri("e", 2)}}, meta(2));
    repo.store_change_records({text_change(1, 2, 1), text_change(1, 2, 2), text_change(1, 2, 3)});
    ChangeFilter filter;
    filter.module = m;
    const auto records = repo.load_change_records(filter);
    ASSERT_EQ(records.size(), 2u); // e2 by the later version, e1 by fallback
    EXPECT_EQ(records[0].entity, testing::pool_iri("e", 1));
    EXPECT_EQ(records[1].entity, testing::pool_iri("e", 2));
}

TEST(Repository, SaveLoadRoundTrip) {
    testing::Random rng(13);
    VersionRepository repo;
    Graph g = testing::random_graph(rng, 50);
    for (VersionNumber v = 1; v <= 30; ++v) {
        g = testing::mutate(rng, g, 3, 3);
        VersionMeta m = meta(v, "2005-03-01T10:00:00Z");
        m.comment = "tab\there\nnewline ü";
        if (v % 10 == 0) m.release = "R" + std::to_string(v / 10);
        repo.commit(g, m);
    }
    repo.store_change_records({text_change(4, 5, 1)});
    testing::TempDir dir;
    repo.save(dir.path());
    const VersionRepository loaded = VersionRepository::load(dir.path());
    EXPECT_EQ(loaded.files(), repo.files());
    EXPECT_EQ(loaded.versions(), repo.versions());
    for (VersionNumber v = 1; v <= 30; ++v) EXPECT_EQ(loaded.checkout(v), repo.checkout(v));
    EXPECT_EQ(loaded.load_change_records(), repo.load_change_records());
    EXPECT_EQ(loaded.schema(), repo.schema());
}

TEST(Repository, LoadRejectsMissingDirectory) {
    testing::TempDir dir;
    EXPECT_THROW(VersionRepository::load(dir.path() / "nope"), StorageError);
}

} // namespace
} // namespace procevo
