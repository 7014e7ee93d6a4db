#ifndef PROCEVO_GENERATOR_HPP
#define PROCEVO_GENERATOR_HPP

#include "procevo/change_record.hpp"
#include "procevo/process_xml.hpp"
#include "procevo/schema.hpp"
#include "procevo/timestamp.hpp"
#include "procevo/version_repository.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace procevo {

struct ReleaseBurst {
    VersionNumber version = 0;
    /// Change-rate multiplier inside the release window; also divides the
    /// mean gap between timestamps there.
    double intensity = 1;

    friend bool operator==(const ReleaseBurst&, const ReleaseBurst&) = default;
};

/// Parameters of a synthetic history. Text form: see README, "Generator
/// config".
struct GeneratorConfig {
    std::uint64_t seed = 1;
    std::uint32_t version_count = 30;
    std::uint32_t module_count = 4;
    /// Typed entities in version 1, modules included.
    std::uint32_t initial_entity_count = 60;
    /// Typed entities in the last version; defaults to the initial count.
    std::optional<std::uint32_t> final_entity_count;
    /// Mean number of scripted operations per version outside releases.
    double changes_per_version = 4;
    /// Versions on either side of a release that belong to its window.
    std::uint32_t release_window = 5;
    std::vector<ReleaseBurst> release_schedule;
    std::map<ChangeKind, double> change_kind_weights{{ChangeKind::EntityAdded, 1},
                                                     {ChangeKind::EntityDeleted, 1},
                                                     {ChangeKind::RelationAdded, 1},
                                                     {ChangeKind::RelationDeleted, 1},
                                                     {ChangeKind::TextPropertyChanged, 3}};
    std::set<VersionNumber> malformed_versions;
    EpochSeconds start_time = 1107248400; // 2005-02-01T09:00:00Z
    double gap_mean_hours = 12;
    /// Share of new non-module entities placed in no module.
    double unassigned_fraction = 0.1;

    /// Keys left out keep their defaults. Throws ParseError, InvalidConfig.
    static GeneratorConfig parse(std::string_view text);
    std::string to_text() const;
    /// Throws InvalidConfig.
    void validate() const;

    std::uint32_t final_count() const { return final_entity_count.value_or(initial_entity_count); }
    /// Burst intensity in effect for the transition that produces `version`.
    double intensity_at(VersionNumber version) const;
    bool in_release_window(VersionNumber version) const;
};

/// What a generator run knows about the history it wrote.
struct GeneratedHistory {
    /// Every version, malformed ones included.
    std::vector<VersionMeta> versions;
    std::set<VersionNumber> malformed;
    /// Typed entity count of every version's logical state.
    std::map<VersionNumber, std::size_t> entity_counts;
    /// Scripted changes of every adjacent pair (v-1, v), canonical order.
    std::vector<ChangeRecord> script;
    /// Changes between consecutive readable versions: the script for
    /// adjacent pairs, a state diff across malformed versions. This is what
    /// detection on the ingested corpus must reproduce.
    std::vector<ChangeRecord> ground_truth;
};

/// Receives (file name, content) for every corpus file.
using FileSink = std::function<void(const std::string& name, const std::string& content)>;

/// Writes `NNNN.xml` per version, `versions.tsv` and `groundtruth.csv`
/// through `sink`. Same config, same bytes. Throws InvalidConfig.
GeneratedHistory generate(const GeneratorConfig& config, const FileSink& sink);

/// generate() into a directory (created when missing).
GeneratedHistory generate_corpus(const GeneratorConfig& config, const std::filesystem::path& directory);

/// Change records between two model states under the change patterns of
/// detect_changes, computed on the entity structure rather than on
/// statements.
std::vector<ChangeRecord> diff_models(const ProcessModel& from, const ProcessModel& to, VersionNumber from_version,
                                      VersionNumber to_version, const ProcessSchema& schema);

} // namespace procevo

#endif
