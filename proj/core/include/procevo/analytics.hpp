#ifndef PROCEVO_ANALYTICS_HPP
#define PROCEVO_ANALYTICS_HPP

#include "procevo/change_record.hpp"
#include "procevo/timestamp.hpp"
#include "procevo/version_repository.hpp"

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace procevo {

enum class XAxis { Version, CalendarTime };

std::string_view to_string(XAxis axis) noexcept;

inline constexpr std::string_view kTotalGroup = "total";
inline constexpr std::string_view kUnassignedGroup = "unassigned";

struct MetricPoint {
    /// Version number, or epoch seconds on the calendar-time axis.
    std::int64_t x = 0;
    std::uint64_t value = 0;

    friend bool operator==(const MetricPoint&, const MetricPoint&) = default;
};

/// One plotted line: points sorted by x, at most one per x.
struct MetricSeries {
    std::string name;
    XAxis x_axis = XAxis::Version;
    /// Module IRI, "total" or "unassigned".
    std::string group;
    std::vector<MetricPoint> points;

    friend bool operator==(const MetricSeries&, const MetricSeries&) = default;
};

/// Which change records analytics count.
struct ChangeKindFilter {
    std::set<ChangeKind> kinds{ChangeKind::TextPropertyChanged, ChangeKind::EntityAdded, ChangeKind::EntityDeleted};
    bool include_entailed = false;

    bool accepts(const ChangeRecord& r) const { return kinds.contains(r.kind) && (include_entailed || !r.entailed); }
};

/// Entity counts per module for every stored version. Entities are the typed
/// subjects of a version; an entity belongs to module m when (m, containment,
/// e) is present. Typed entities in no module form the "unassigned" group,
/// and "total" is the sum over all groups. A module series has points only
/// for versions where the module contains something; "unassigned" and
/// "total" have a point for every stored version. On the time axis, versions
/// sharing a timestamp keep the value of the later one.
/// Module series come first (ordered by IRI), then "unassigned", then "total".
std::vector<MetricSeries> entity_count_series(const VersionRepository& repo, XAxis axis = XAxis::Version);

/// Change records per module, placed at the record's target version (or its
/// timestamp). Attribution follows attributed_modules(); records of entities
/// in no module count as "unassigned". A "total" series counts each record
/// once. Only non-zero points are emitted.
/// Throws MissingChangeRecords when no change records were ever stored, and
/// MissingTimestamps on the time axis when a needed timestamp is absent.
std::vector<MetricSeries> change_distribution(const VersionRepository& repo, XAxis axis,
                                              const ChangeKindFilter& filter = {});

inline constexpr std::int64_t kSecondsPerDay = 86400;

/// Versions per calendar bin. Bins start at multiples of `bin_width` seconds
/// since the Unix epoch (so daily bins start at UTC midnight) and cover the
/// first to the last timestamp, empty bins included.
/// Throws MissingTimestamps, and InvalidConfig for a non-positive width.
MetricSeries version_density(const VersionRepository& repo, std::int64_t bin_width = kSecondsPerDay);

struct ChangeCell {
    std::size_t entity_index = 0;
    VersionNumber version = 0;
    std::uint64_t count = 0;

    friend bool operator==(const ChangeCell&, const ChangeCell&) = default;
};

struct ChangeMatrix {
    Iri module{"urn:procevo:none"};
    /// Entities ever contained in the module, by first version of
    /// containment, ties by IRI.
    std::vector<Iri> entities;
    /// Sorted by (entity_index, version); counts are at least 1.
    std::vector<ChangeCell> cells;

    friend bool operator==(const ChangeMatrix&, const ChangeMatrix&) = default;
};

/// Per-entity change history of one module. Throws UnknownModule when the
/// module is neither typed nor containing anything in any version, and
/// MissingChangeRecords.
ChangeMatrix entity_change_matrix(const VersionRepository& repo, const Iri& module,
                                  const ChangeKindFilter& filter = {});

/// Header `metric,group,x,value`; x is the version number or an ISO-8601
/// instant. Series in the given order.
std::string series_csv(const std::vector<MetricSeries>& series);

/// Header `module,entity_index,entity,version,count`.
std::string matrix_csv(const ChangeMatrix& matrix);

} // namespace procevo

#endif
