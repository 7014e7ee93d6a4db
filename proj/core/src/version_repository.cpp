#include "procevo/version_repository.hpp"

#include "procevo/error.hpp"
#include "procevo/membership.hpp"
#include "procevo/ntriples.hpp"
#include "procevo/text_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>

namespace procevo {

namespace {

constexpr std::string_view kMetaHeader = "version\ttimestamp\tauthor\tcomment\trelease";

} // namespace

std::string version_file_stem(VersionNumber version) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "v%04u", version);
    return buf;
}

std::size_t VersionRepository::index_of(VersionNumber version) const {
    const auto it = std::lower_bound(entries_.begin(), entries_.end(), version,
                                     [](const Entry& e, VersionNumber v) { return e.meta.version < v; });
    if (it == entries_.end() || it->meta.version != version)
        throw UnknownVersion("unknown version " + std::to_string(version));
    return static_cast<std::size_t>(it - entries_.begin());
}

bool VersionRepository::contains(VersionNumber version) const noexcept {
    const auto it = std::lower_bound(entries_.begin(), entries_.end(), version,
                                     [](const Entry& e, VersionNumber v) { return e.meta.version < v; });
    return it != entries_.end() && it->meta.version == version;
}

void VersionRepository::append(VersionMeta meta, std::optional<Graph> snapshot, ComparisonModel delta) {
    const auto epoch = meta.epoch();
    if (!meta.timestamp.empty() && !epoch)
        throw Error("version " + std::to_string(meta.version) + ": invalid ISO-8601 timestamp '" + meta.timestamp + "'");
    Entry entry{std::move(meta), std::move(snapshot), std::move(delta), false};
    if (epoch) {
        entry.out_of_order = latest_epoch_ && *epoch < *latest_epoch_;
        latest_epoch_ = latest_epoch_ ? std::max(*latest_epoch_, *epoch) : *epoch;
    }
    entries_.push_back(std::move(entry));
}

VersionNumber VersionRepository::commit(const Graph& graph, VersionMeta meta) {
    const VersionNumber version = meta.version;
    if (version == 0) throw NonMonotonicVersion("version numbers start at 1");
    if (contains(version)) throw DuplicateVersion("version " + std::to_string(version) + " already committed");
    if (!entries_.empty() && version < entries_.back().meta.version)
        throw NonMonotonicVersion("version " + std::to_string(version) + " is older than latest version " +
                                  std::to_string(entries_.back().meta.version));

    meta.version = version;
    if (entries_.size() % kSnapshotInterval == 0) {
        append(std::move(meta), graph, ComparisonModel{});
    } else {
        ComparisonModel delta = compare(head_, graph).changes_only();
        delta.base_version = entries_.back().meta.version;
        delta.target_version = version;
        append(std::move(meta), std::nullopt, std::move(delta));
    }
    head_ = graph;
    return version;
}

std::size_t VersionRepository::replay_length(VersionNumber version) const {
    return index_of(version) % kSnapshotInterval;
}

bool VersionRepository::is_snapshot(VersionNumber version) const { return replay_length(version) == 0; }

Graph VersionRepository::checkout(VersionNumber version) const {
    const std::size_t index = index_of(version);
    const std::size_t snapshot_index = index - index % kSnapshotInterval;
    Graph graph = *entries_[snapshot_index].snapshot;
    for (std::size_t i = snapshot_index + 1; i <= index; ++i) apply_delta_in_place(graph, entries_[i].delta);
    return graph;
}

std::vector<VersionMeta> VersionRepository::versions() const {
    std::vector<VersionMeta> out;
    out.reserve(entries_.size());
    for (const Entry& e : entries_) out.push_back(e.meta);
    return out;
}

const VersionMeta& VersionRepository::meta(VersionNumber version) const { return entries_[index_of(version)].meta; }

bool VersionRepository::timestamp_out_of_order(VersionNumber version) const {
    return entries_[index_of(version)].out_of_order;
}

void VersionRepository::for_each_version(const std::function<void(const VersionMeta&, const Graph&)>& visit) const {
    Graph graph;
    for (const Entry& e : entries_) {
        if (e.snapshot)
            graph = *e.snapshot;
        else
            apply_delta_in_place(graph, e.delta);
        visit(e.meta, graph);
    }
}

void VersionRepository::store_change_records(const std::vector<ChangeRecord>& records) {
    for (const ChangeRecord& r : records) {
        for (VersionNumber v : {r.from_version, r.to_version})
            if (!contains(v))
                throw UnknownVersion("change record references unknown version " + std::to_string(v));
        if (std::string problem = validate(r); !problem.empty()) throw MalformedChangeGraph(problem);
    }
    for (const Statement& s : encode_changes_as_graph(records)) change_graph_.insert(s);
    changes_stored_ = true;
}

std::vector<ChangeRecord> VersionRepository::load_change_records(const ChangeFilter& filter) const {
    std::vector<ChangeRecord> records = decode_changes_from_graph(change_graph_);
    std::erase_if(records, [&](const ChangeRecord& r) {
        if (filter.first_version && r.from_version < *filter.first_version) return true;
        if (filter.last_version && r.to_version > *filter.last_version) return true;
        if (filter.kinds && !filter.kinds->contains(r.kind)) return true;
        return false;
    });
    if (!filter.module) return records;

    std::set<VersionNumber> needed;
    for (const ChangeRecord& r : records) {
        needed.insert(r.from_version);
        needed.insert(r.to_version);
    }
    std::map<VersionNumber, ModuleMembership> membership;
    for_each_version([&](const VersionMeta& meta, const Graph& graph) {
        if (needed.contains(meta.version)) membership.emplace(meta.version, module_membership(graph, schema_));
    });
    std::erase_if(records, [&](const ChangeRecord& r) {
        return !attributed_modules(r, membership.at(r.to_version), membership.at(r.from_version))
                    .contains(*filter.module);
    });
    return records;
}

std::vector<std::pair<std::string, std::string>> VersionRepository::files() const {
    std::vector<std::pair<std::string, std::string>> out;
    std::string meta(kMetaHeader);
    meta.push_back('\n');
    for (const Entry& e : entries_) {
        meta += std::to_string(e.meta.version) + '\t' + text_io::escape_field(e.meta.timestamp) + '\t' +
                text_io::escape_field(e.meta.author) + '\t' + text_io::escape_field(e.meta.comment) + '\t' +
                text_io::escape_field(e.meta.release.value_or("")) + '\n';
    }
    out.emplace_back("meta.tsv", std::move(meta));
    out.emplace_back("schema.conf", schema_.to_text());
    for (const Entry& e : entries_) {
        const std::string stem = version_file_stem(e.meta.version);
        if (e.snapshot)
            out.emplace_back(stem + ".snap", ntriples::serialize_graph(*e.snapshot));
        else
            out.emplace_back(stem + ".delta", export_comparison(e.delta));
    }
    if (changes_stored_) out.emplace_back("changes.nt", ntriples::serialize_graph(change_graph_));
    return out;
}

namespace {

bool is_repository_file(const std::filesystem::path& path) {
    const std::string name = path.filename().string();
    if (name == "meta.tsv" || name == "schema.conf" || name == "changes.nt") return true;
    const std::string ext = path.extension().string();
    return name.starts_with("v") && (ext == ".snap" || ext == ".delta");
}

} // namespace

void VersionRepository::save(const std::filesystem::path& directory) const {
    std::filesystem::create_directories(directory);
    for (const auto& item : std::filesystem::directory_iterator(directory))
        if (item.is_regular_file() && is_repository_file(item.path())) std::filesystem::remove(item.path());
    for (const auto& [name, content] : files()) text_io::write_file(directory / name, content);
}

VersionRepository VersionRepository::load(const std::filesystem::path& directory) {
    const auto meta_path = directory / "meta.tsv";
    if (!std::filesystem::is_regular_file(meta_path))
        throw StorageError("not a repository (missing meta.tsv): " + directory.string());

    ProcessSchema schema = ProcessSchema::default_schema();
    if (std::filesystem::is_regular_file(directory / "schema.conf"))
        schema = ProcessSchema::parse(text_io::read_file(directory / "schema.conf"));
    VersionRepository repo(std::move(schema));

    const std::string meta_text = text_io::read_file(meta_path);
    const auto lines = ntriples::split_lines(meta_text);
    if (lines.empty() || lines.front() != kMetaHeader) throw ParseError(1, "meta.tsv: missing header");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const std::size_t line_number = i + 1;
        const auto fields = text_io::split_tsv(lines[i], line_number);
        if (fields.size() != 5) throw ParseError(line_number, "meta.tsv: expected 5 columns");
        VersionMeta meta;
        const auto [end, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), meta.version);
        if (ec != std::errc{} || end != fields[0].data() + fields[0].size())
            throw ParseError(line_number, "meta.tsv: bad version number");
        meta.timestamp = fields[1];
        meta.author = fields[2];
        meta.comment = fields[3];
        if (!fields[4].empty()) meta.release = fields[4];
        if (!repo.entries_.empty() && meta.version <= repo.entries_.back().meta.version)
            throw NonMonotonicVersion("meta.tsv: versions out of order at line " + std::to_string(line_number));

        const std::string stem = version_file_stem(meta.version);
        if (repo.entries_.size() % kSnapshotInterval == 0) {
            Graph snapshot = ntriples::parse_graph(text_io::read_file(directory / (stem + ".snap")));
            repo.head_ = snapshot;
            repo.append(std::move(meta), std::move(snapshot), ComparisonModel{});
        } else {
            ComparisonModel delta =
                parse_comparison(text_io::read_file(directory / (stem + ".delta")), /*with_common=*/false);
            delta.base_version = repo.entries_.back().meta.version;
            delta.target_version = meta.version;
            apply_delta_in_place(repo.head_, delta);
            repo.append(std::move(meta), std::nullopt, std::move(delta));
        }
    }
    if (std::filesystem::is_regular_file(directory / "changes.nt")) {
        repo.change_graph_ = ntriples::parse_graph(text_io::read_file(directory / "changes.nt"));
        repo.changes_stored_ = true;
        decode_changes_from_graph(repo.change_graph_);
    }
    return repo;
}

} // namespace procevo
