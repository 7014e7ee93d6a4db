#ifndef PROCEVO_VERSION_REPOSITORY_HPP
#define PROCEVO_VERSION_REPOSITORY_HPP

#include "procevo/change_record.hpp"
#include "procevo/comparison.hpp"
#include "procevo/graph.hpp"
#include "procevo/schema.hpp"
#include "procevo/timestamp.hpp"

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace procevo {

struct VersionMeta {
    VersionNumber version = 0;
    /// ISO-8601 instant; empty when the corpus carries no metadata for it.
    std::string timestamp;
    std::string author;
    std::string comment;
    std::optional<std::string> release;

    std::optional<EpochSeconds> epoch() const { return parse_iso8601(timestamp); }

    friend bool operator==(const VersionMeta&, const VersionMeta&) = default;
};

/// Change-record selection. Version bounds apply to the record's pair
/// (from_version >= first, to_version <= last); the module filter uses the
/// same attribution rule as the analytics.
struct ChangeFilter {
    std::optional<VersionNumber> first_version;
    std::optional<VersionNumber> last_version;
    std::optional<std::set<ChangeKind>> kinds;
    std::optional<Iri> module;
};

/// Ordered history of graph versions stored as periodic full snapshots plus
/// forward deltas, together with the graph of detected change records.
///
/// Every kSnapshotInterval-th stored version (by position, starting with the
/// first) is a full snapshot; the others hold the change-only comparison
/// against their predecessor. Const member functions never mutate shared
/// state, so concurrent readers of a repository are safe.
class VersionRepository {
public:
    static constexpr std::size_t kSnapshotInterval = 20;

    VersionRepository() = default;
    explicit VersionRepository(ProcessSchema schema) : schema_(std::move(schema)) {}

    const ProcessSchema& schema() const noexcept { return schema_; }

    /// Throws DuplicateVersion or NonMonotonicVersion (also for version 0),
    /// and Error for an unparsable non-empty timestamp.
    VersionNumber commit(const Graph& graph, VersionMeta meta);

    /// Throws UnknownVersion.
    Graph checkout(VersionNumber version) const;

    /// Number of deltas checkout(version) replays after its snapshot.
    std::size_t replay_length(VersionNumber version) const;
    bool is_snapshot(VersionNumber version) const;

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    bool contains(VersionNumber version) const noexcept;
    std::vector<VersionMeta> versions() const;
    const VersionMeta& meta(VersionNumber version) const;
    /// True when the version's timestamp is earlier than a previous one's.
    bool timestamp_out_of_order(VersionNumber version) const;

    /// Visits every stored version in order, replaying deltas incrementally.
    void for_each_version(const std::function<void(const VersionMeta&, const Graph&)>& visit) const;

    /// Records must reference stored versions (UnknownVersion otherwise).
    /// Storing is idempotent: node IRIs are derived from record contents.
    void store_change_records(const std::vector<ChangeRecord>& records);
    std::vector<ChangeRecord> load_change_records(const ChangeFilter& filter = {}) const;
    const Graph& change_record_graph() const noexcept { return change_graph_; }
    /// False until store_change_records has been called at least once.
    bool has_change_records() const noexcept { return changes_stored_; }

    // Directory layout: meta.tsv, schema.conf, vNNNN.snap, vNNNN.delta,
    // changes.nt (present once change records were stored).
    void save(const std::filesystem::path& directory) const;
    static VersionRepository load(const std::filesystem::path& directory);

    /// Exact file contents save() writes, keyed by file name.
    std::vector<std::pair<std::string, std::string>> files() const;

private:
    struct Entry {
        VersionMeta meta;
        std::optional<Graph> snapshot;
        ComparisonModel delta;
        bool out_of_order = false;
    };

    std::size_t index_of(VersionNumber version) const;
    void append(VersionMeta meta, std::optional<Graph> snapshot, ComparisonModel delta);

    ProcessSchema schema_ = ProcessSchema::default_schema();
    std::vector<Entry> entries_;
    Graph head_;
    std::optional<EpochSeconds> latest_epoch_;
    Graph change_graph_;
    bool changes_stored_ = false;
};

std::string version_file_stem(VersionNumber version);

} // namespace procevo

#endif
