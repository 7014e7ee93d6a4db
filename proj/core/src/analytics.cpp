#include "procevo/analytics.hpp"

#include "procevo/csv.hpp"
#include "procevo/error.hpp"
#include "procevo/membership.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace procevo {

std::string_view to_string(XAxis axis) noexcept {
    return axis == XAxis::Version ? "version" : "calendarTime";
}

namespace {

using GroupPoints = std::map<std::string, std::map<std::int64_t, std::uint64_t>>;

std::int64_t x_of(const VersionMeta& meta, XAxis axis) {
    if (axis == XAxis::Version) return meta.version;
    const auto epoch = meta.epoch();
    if (!epoch) throw MissingTimestamps("version " + std::to_string(meta.version) + " has no timestamp");
    return *epoch;
}

// Module series by IRI, then "unassigned", then "total"; empty groups dropped.
std::vector<MetricSeries> to_series(std::string_view name, XAxis axis, GroupPoints groups) {
    std::vector<MetricSeries> out;
    auto emit = [&](const std::string& group, const std::map<std::int64_t, std::uint64_t>& points) {
        if (points.empty()) return;
        MetricSeries s{std::string(name), axis, group, {}};
        for (const auto& [x, value] : points) s.points.push_back({x, value});
        out.push_back(std::move(s));
    };
    const std::string unassigned(kUnassignedGroup);
    const std::string total(kTotalGroup);
    for (const auto& [group, points] : groups)
        if (group != unassigned && group != total) emit(group, points);
    emit(unassigned, groups[unassigned]);
    emit(total, groups[total]);
    return out;
}

// Modules each record is attributed to (see attributed_modules), computed
// with one pass over the history that only looks up the entities it needs.
std::vector<std::set<Iri>> attribute(const VersionRepository& repo, const std::vector<ChangeRecord>& records) {
    std::map<VersionNumber, std::set<Iri>> wanted;
    for (const ChangeRecord& r : records) {
        wanted[r.from_version].insert(r.entity);
        wanted[r.to_version].insert(r.entity);
    }
    std::map<std::pair<VersionNumber, Iri>, std::set<Iri>> found;
    const Iri contains = repo.schema().containment_predicate();
    repo.for_each_version([&](const VersionMeta& meta, const Graph& graph) {
        const auto it = wanted.find(meta.version);
        if (it == wanted.end()) return;
        for (const Statement& s : graph) {
            if (s.predicate != contains) continue;
            const auto* entity = std::get_if<Iri>(&s.object);
            if (entity != nullptr && it->second.contains(*entity)) found[{meta.version, *entity}].insert(s.subject);
        }
    });
    std::vector<std::set<Iri>> out;
    out.reserve(records.size());
    for (const ChangeRecord& r : records) {
        if (const auto it = found.find({r.to_version, r.entity}); it != found.end()) {
            out.push_back(it->second);
        } else if (const auto from = found.find({r.from_version, r.entity}); from != found.end()) {
            out.push_back(from->second);
        } else {
            out.emplace_back();
        }
    }
    return out;
}

std::vector<ChangeRecord> filtered_records(const VersionRepository& repo, const ChangeKindFilter& filter) {
    if (!repo.has_change_records())
        throw MissingChangeRecords("no change records stored; run change detection first");
    ChangeFilter selection;
    selection.kinds = filter.kinds;
    std::vector<ChangeRecord> records = repo.load_change_records(selection);
    std::erase_if(records, [&](const ChangeRecord& r) { return !filter.accepts(r); });
    return records;
}

} // namespace

std::vector<MetricSeries> entity_count_series(const VersionRepository& repo, XAxis axis) {
    GroupPoints groups;
    const std::string unassigned(kUnassignedGroup);
    const std::string total(kTotalGroup);
    repo.for_each_version([&](const VersionMeta& meta, const Graph& graph) {
        const std::int64_t x = x_of(meta, axis);
        const ModuleMembership membership = module_membership(graph, repo.schema());
        std::map<std::string, std::uint64_t> counts;
        std::uint64_t sum = 0;
        for (const Iri& e : entities_of(graph, repo.schema())) {
            const std::set<Iri>& modules = membership.modules_of(e);
            if (modules.empty()) ++counts[unassigned];
            for (const Iri& m : modules) ++counts[m.str()];
            sum += std::max<std::size_t>(modules.size(), 1);
        }
        counts[unassigned] += 0;
        counts[total] = sum;
        for (const auto& [group, value] : counts) groups[group][x] = value;
    });
    return to_series("complexity", axis, std::move(groups));
}

std::vector<MetricSeries> change_distribution(const VersionRepository& repo, XAxis axis, const ChangeKindFilter& filter) {
    const std::vector<ChangeRecord> records = filtered_records(repo, filter);
    const std::vector<std::set<Iri>> modules = attribute(repo, records);
    GroupPoints groups;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const std::int64_t x = x_of(repo.meta(records[i].to_version), axis);
        if (modules[i].empty()) ++groups[std::string(kUnassignedGroup)][x];
        for (const Iri& m : modules[i]) ++groups[m.str()][x];
        ++groups[std::string(kTotalGroup)][x];
    }
    return to_series("changes", axis, std::move(groups));
}

MetricSeries version_density(const VersionRepository& repo, std::int64_t bin_width) {
    if (bin_width <= 0) throw InvalidConfig("density bin width must be positive");
    MetricSeries series{"density", XAxis::CalendarTime, std::string(kTotalGroup), {}};
    std::map<std::int64_t, std::uint64_t> bins;
    auto bin_of = [&](std::int64_t t) {
        std::int64_t q = t / bin_width;
        if (t % bin_width != 0 && t < 0) --q;
        return q * bin_width;
    };
    for (const VersionMeta& meta : repo.versions()) ++bins[bin_of(x_of(meta, XAxis::CalendarTime))];
    if (bins.empty()) return series;
    for (std::int64_t start = bins.begin()->first; start <= bins.rbegin()->first; start += bin_width) {
        const auto it = bins.find(start);
        series.points.push_back({start, it == bins.end() ? 0 : it->second});
    }
    return series;
}

ChangeMatrix entity_change_matrix(const VersionRepository& repo, const Iri& module, const ChangeKindFilter& filter) {
    bool known = false;
    std::map<Iri, VersionNumber> first_seen;
    const Iri contains = repo.schema().containment_predicate();
    const Iri type = repo.schema().type_predicate();
    repo.for_each_version([&](const VersionMeta& meta, const Graph& graph) {
        for (const Statement& s : graph.with_subject(module)) {
            if (s.predicate == type) known = true;
            if (s.predicate != contains) continue;
            known = true;
            if (const auto* entity = std::get_if<Iri>(&s.object)) first_seen.emplace(*entity, meta.version);
        }
    });
    if (!known) throw UnknownModule("module " + module.str() + " occurs in no version");

    ChangeMatrix matrix;
    matrix.module = module;
    std::vector<std::pair<VersionNumber, Iri>> order;
    for (const auto& [entity, version] : first_seen) order.emplace_back(version, entity);
    std::sort(order.begin(), order.end());
    std::map<Iri, std::size_t> row_of;
    for (const auto& [version, entity] : order) {
        row_of.emplace(entity, matrix.entities.size());
        matrix.entities.push_back(entity);
    }

    const std::vector<ChangeRecord> records = filtered_records(repo, filter);
    const std::vector<std::set<Iri>> modules = attribute(repo, records);
    std::map<std::pair<std::size_t, VersionNumber>, std::uint64_t> cells;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!modules[i].contains(module)) continue;
        const auto row = row_of.find(records[i].entity);
        if (row != row_of.end()) ++cells[{row->second, records[i].to_version}];
    }
    for (const auto& [key, count] : cells) matrix.cells.push_back({key.first, key.second, count});
    return matrix;
}

std::string series_csv(const std::vector<MetricSeries>& series) {
    std::string out = "metric,group,x,value\n";
    for (const MetricSeries& s : series) {
        for (const MetricPoint& p : s.points) {
            const std::string x = s.x_axis == XAxis::Version ? std::to_string(p.x) : format_iso8601(p.x);
            out += csv::row({s.name, s.group, x, std::to_string(p.value)});
            out.push_back('\n');
        }
    }
    return out;
}

std::string matrix_csv(const ChangeMatrix& matrix) {
    std::string out = "module,entity_index,entity,version,count\n";
    for (const ChangeCell& c : matrix.cells) {
        out += csv::row({matrix.module.str(), std::to_string(c.entity_index), matrix.entities[c.entity_index].str(),
                         std::to_string(c.version), std::to_string(c.count)});
        out.push_back('\n');
    }
    return out;
}

} // namespace procevo
