#include "procevo/generator.hpp"

#include "procevo/config_text.hpp"
#include "procevo/error.hpp"
#include "procevo/rng.hpp"
#include "procevo/text_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace procevo {

// ---------------------------------------------------------------------------
// Config

namespace {

template <typename T>
T parse_number(std::string_view text, std::size_t line, std::string_view key) {
    T value{};
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size())
        throw ParseError(line, "'" + std::string(key) + "': not a number: '" + std::string(text) + "'");
    return value;
}

std::pair<std::string_view, std::string_view> split_pair(std::string_view item, std::size_t line) {
    const std::size_t colon = item.find(':');
    if (colon == std::string_view::npos) throw ParseError(line, "expected 'key:value', got '" + std::string(item) + "'");
    return {config::trim(item.substr(0, colon)), config::trim(item.substr(colon + 1))};
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

GeneratorConfig GeneratorConfig::parse(std::string_view text) {
    GeneratorConfig c;
    for (const config::Entry& e : config::parse(text)) {
        const std::string_view v = e.value;
        if (e.key == "seed") {
            c.seed = parse_number<std::uint64_t>(v, e.line, e.key);
        } else if (e.key == "version_count") {
            c.version_count = parse_number<std::uint32_t>(v, e.line, e.key);
        } else if (e.key == "module_count") {
            c.module_count = parse_number<std::uint32_t>(v, e.line, e.key);
        } else if (e.key == "initial_entity_count") {
            c.initial_entity_count = parse_number<std::uint32_t>(v, e.line, e.key);
        } else if (e.key == "final_entity_count") {
            c.final_entity_count = parse_number<std::uint32_t>(v, e.line, e.key);
        } else if (e.key == "changes_per_version") {
            c.changes_per_version = parse_number<double>(v, e.line, e.key);
        } else if (e.key == "release_window") {
            c.release_window = parse_number<std::uint32_t>(v, e.line, e.key);
        } else if (e.key == "release_schedule") {
            c.release_schedule.clear();
            for (const std::string& item : config::split_list(v)) {
                const auto [version, intensity] = split_pair(item, e.line);
                c.release_schedule.push_back(
                    {parse_number<VersionNumber>(version, e.line, e.key), parse_number<double>(intensity, e.line, e.key)});
            }
        } else if (e.key == "change_kind_weights") {
            c.change_kind_weights.clear();
            for (const std::string& item : config::split_list(v)) {
                const auto [name, weight] = split_pair(item, e.line);
                const auto kind = parse_change_kind(name);
                if (!kind) throw ParseError(e.line, "unknown change kind '" + std::string(name) + "'");
                c.change_kind_weights[*kind] = parse_number<double>(weight, e.line, e.key);
            }
        } else if (e.key == "malformed_versions") {
            c.malformed_versions.clear();
            for (const std::string& item : config::split_list(v))
                c.malformed_versions.insert(parse_number<VersionNumber>(item, e.line, e.key));
        } else if (e.key == "start_time") {
            const auto t = parse_iso8601(v);
            if (!t) throw ParseError(e.line, "start_time: invalid ISO-8601 instant '" + e.value + "'");
            c.start_time = *t;
        } else if (e.key == "gap_mean_hours") {
            c.gap_mean_hours = parse_number<double>(v, e.line, e.key);
        } else if (e.key == "unassigned_fraction") {
            c.unassigned_fraction = parse_number<double>(v, e.line, e.key);
        } else {
            throw ParseError(e.line, "unknown generator key '" + e.key + "'");
        }
    }
    c.validate();
    return c;
}

std::string GeneratorConfig::to_text() const {
    std::string out;
    out += "seed = " + std::to_string(seed) + "\n";
    out += "version_count = " + std::to_string(version_count) + "\n";
    out += "module_count = " + std::to_string(module_count) + "\n";
    out += "initial_entity_count = " + std::to_string(initial_entity_count) + "\n";
    out += "final_entity_count = " + std::to_string(final_count()) + "\n";
    out += "changes_per_version = " + format_double(changes_per_version) + "\n";
    out += "release_window = " + std::to_string(release_window) + "\n";
    std::string items;
    for (const ReleaseBurst& r : release_schedule)
        items += (items.empty() ? "" : ", ") + std::to_string(r.version) + ":" + format_double(r.intensity);
    out += "release_schedule = " + items + "\n";
    items.clear();
    for (const auto& [kind, weight] : change_kind_weights)
        items += (items.empty() ? "" : ", ") + std::string(to_string(kind)) + ":" + format_double(weight);
    out += "change_kind_weights = " + items + "\n";
    items.clear();
    for (VersionNumber v : malformed_versions) items += (items.empty() ? "" : ", ") + std::to_string(v);
    out += "malformed_versions = " + items + "\n";
    out += "start_time = " + format_iso8601(start_time) + "\n";
    out += "gap_mean_hours = " + format_double(gap_mean_hours) + "\n";
    out += "unassigned_fraction = " + format_double(unassigned_fraction) + "\n";
    return out;
}

void GeneratorConfig::validate() const {
    if (version_count == 0) throw InvalidConfig("version_count must be at least 1");
    if (initial_entity_count < module_count || final_count() < module_count)
        throw InvalidConfig("entity counts must cover at least the modules");
    if (!(changes_per_version >= 0)) throw InvalidConfig("changes_per_version must be non-negative");
    if (!(gap_mean_hours > 0)) throw InvalidConfig("gap_mean_hours must be positive");
    if (!(unassigned_fraction >= 0 && unassigned_fraction <= 1))
        throw InvalidConfig("unassigned_fraction must lie in [0, 1]");
    bool positive = false;
    for (const auto& [kind, weight] : change_kind_weights) {
        if (!(weight >= 0)) throw InvalidConfig("change kind weights must be non-negative");
        positive = positive || weight > 0;
    }
    if (!positive) throw InvalidConfig("at least one change kind weight must be positive");
    for (VersionNumber v : malformed_versions)
        if (v == 0 || v > version_count)
            throw InvalidConfig("malformed version " + std::to_string(v) + " is outside 1.." + std::to_string(version_count));
    for (const ReleaseBurst& r : release_schedule) {
        if (r.version == 0 || r.version > version_count)
            throw InvalidConfig("release version " + std::to_string(r.version) + " is outside the history");
        if (!(r.intensity > 0)) throw InvalidConfig("release intensity must be positive");
    }
}

double GeneratorConfig::intensity_at(VersionNumber version) const {
    double intensity = 1;
    for (const ReleaseBurst& r : release_schedule)
        if (version + release_window >= r.version && version <= r.version + release_window)
            intensity = std::max(intensity, r.intensity);
    return intensity;
}

bool GeneratorConfig::in_release_window(VersionNumber version) const {
    return std::any_of(release_schedule.begin(), release_schedule.end(), [&](const ReleaseBurst& r) {
        return version + release_window >= r.version && version <= r.version + release_window;
    });
}

// ---------------------------------------------------------------------------
// State diff

std::vector<ChangeRecord> diff_models(const ProcessModel& from, const ProcessModel& to, VersionNumber from_version,
                                      VersionNumber to_version, const ProcessSchema& schema) {
    std::vector<ChangeRecord> out;
    auto record = [&](ChangeKind kind, const std::string& id) {
        ChangeRecord r;
        r.from_version = from_version;
        r.to_version = to_version;
        r.kind = kind;
        r.entity = schema.entity_iri(id);
        return r;
    };
    std::set<std::string> changed;
    for (const auto& [id, entity] : to.entities)
        if (!from.entities.contains(id)) {
            changed.insert(id);
            out.push_back(record(ChangeKind::EntityAdded, id));
        }
    for (const auto& [id, entity] : from.entities)
        if (!to.entities.contains(id)) {
            changed.insert(id);
            out.push_back(record(ChangeKind::EntityDeleted, id));
        }

    static const ProcessEntity kAbsent;
    auto find = [](const ProcessModel& m, const std::string& id) -> const ProcessEntity& {
        const auto it = m.entities.find(id);
        return it == m.entities.end() ? kAbsent : it->second;
    };
    std::set<std::string> ids;
    for (const auto& [id, entity] : from.entities) ids.insert(id);
    for (const auto& [id, entity] : to.entities) ids.insert(id);
    for (const std::string& id : ids) {
        const ProcessEntity& a = find(from, id);
        const ProcessEntity& b = find(to, id);
        auto relation_records = [&](const ProcessEntity& x, const ProcessEntity& y, ChangeKind kind) {
            for (const auto& [name, target] : x.refs) {
                if (y.refs.contains({name, target}) || !schema.relation_names.contains(name)) continue;
                ChangeRecord r = record(kind, id);
                r.property = schema.predicate(name);
                r.related_entity = schema.entity_iri(target);
                r.entailed = changed.contains(id) || changed.contains(target);
                out.push_back(std::move(r));
            }
        };
        relation_records(b, a, ChangeKind::RelationAdded);
        relation_records(a, b, ChangeKind::RelationDeleted);
        if (changed.contains(id)) continue;

        std::set<std::string> names;
        for (const auto& [name, values] : a.properties) names.insert(name);
        for (const auto& [name, values] : b.properties) names.insert(name);
        for (const std::string& name : names) {
            if (!schema.text_property_names.contains(name)) continue;
            ChangeRecord r = record(ChangeKind::TextPropertyChanged, id);
            r.property = schema.predicate(name);
            if (const auto it = a.properties.find(name); it != a.properties.end())
                for (const std::string& v : it->second) r.old_values.insert(Literal(v));
            if (const auto it = b.properties.find(name); it != b.properties.end())
                for (const std::string& v : it->second) r.new_values.insert(Literal(v));
            if (r.old_values != r.new_values) out.push_back(std::move(r));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Generation

namespace {

constexpr const char* kVerbs[] = {"Plan",   "Review", "Prepare", "Assess",  "Specify", "Approve",
                                  "Prüfen", "Ändern", "Define",  "Release", "Verify",  "Integrate"};
constexpr const char* kNouns[] = {"project manual", "requirements", "architecture", "test case",
                                  "Qualitätssicherung", "Übergabe",  "contract",      "risk list",
                                  "system element",  "Änderungsantrag", "interface",  "delivery"};
constexpr const char* kAuthors[] = {"anna", "bernd", "clara", "dieter", "eva", "jürgen"};
constexpr const char* kEntityTypes[] = {"Activity", "Product", "Role", "TextModule"};

class HistoryBuilder {
public:
    HistoryBuilder(const GeneratorConfig& config, const FileSink& sink)
        : config_(config), sink_(sink), schema_(ProcessSchema::default_schema()), rng_(config.seed) {
        for (const std::string& r : schema_.relation_names)
            if (r != schema_.containment_relation) plain_relations_.push_back(r);
    }

    GeneratedHistory run() {
        populate();
        EpochSeconds time = config_.start_time;
        std::vector<std::pair<VersionNumber, std::string>> releases;
        for (const ReleaseBurst& r : config_.release_schedule) releases.emplace_back(r.version, "");
        std::sort(releases.begin(), releases.end());
        for (std::size_t i = 0; i < releases.size(); ++i) releases[i].second = "R" + std::to_string(i + 1);

        std::string tsv = "version\ttimestamp\tauthor\tcomment\trelease\n";
        std::optional<ProcessModel> last_readable;
        VersionNumber last_readable_version = 0;
        for (VersionNumber v = 1; v <= config_.version_count; ++v) {
            std::vector<ChangeRecord> script;
            if (v > 1) {
                script = transition(v);
                time += gap(v);
            }
            VersionMeta meta;
            meta.version = v;
            meta.timestamp = format_iso8601(time);
            meta.author = rng_.pick(kAuthors);
            meta.comment = v == 1 ? "Initial import" : "Edit\t" + std::to_string(script.size()) + " changes";
            for (const auto& [version, label] : releases)
                if (version == v) meta.release = label;
            tsv += std::to_string(v) + "\t" + meta.timestamp + "\t" + text_io::escape_field(meta.author) + "\t" +
                   text_io::escape_field(meta.comment) + "\t" + meta.release.value_or("") + "\n";

            const bool malformed = config_.malformed_versions.contains(v);
            std::string xml = write_process_xml(model_);
            if (malformed) xml.resize(xml.size() / 2);
            char name[32];
            std::snprintf(name, sizeof name, "%04u.xml", v);
            sink_(name, xml);

            if (!malformed) {
                if (last_readable && last_readable_version + 1 == v) {
                    history_.ground_truth.insert(history_.ground_truth.end(), script.begin(), script.end());
                } else if (last_readable) {
                    const auto bridged = diff_models(*last_readable, model_, last_readable_version, v, schema_);
                    history_.ground_truth.insert(history_.ground_truth.end(), bridged.begin(), bridged.end());
                }
                last_readable = model_;
                last_readable_version = v;
            }
            history_.script.insert(history_.script.end(), script.begin(), script.end());
            history_.entity_counts[v] = model_.entities.size();
            history_.versions.push_back(std::move(meta));
        }
        history_.malformed = config_.malformed_versions;
        sink_("versions.tsv", tsv);
        sink_("groundtruth.csv", export_changes_csv(history_.ground_truth));
        return std::move(history_);
    }

private:
    // Expected typed-entity count of a version: a straight line from the
    // initial to the final count, truncated to integers.
    std::int64_t expected_count(VersionNumber v) const {
        const std::int64_t first = config_.initial_entity_count;
        const std::int64_t last = config_.final_count();
        if (config_.version_count == 1) return first;
        return first + (last - first) * static_cast<std::int64_t>(v - 1) / static_cast<std::int64_t>(config_.version_count - 1);
    }

    EpochSeconds gap(VersionNumber v) {
        const double mean = config_.gap_mean_hours * 3600.0 / config_.intensity_at(v);
        const double spread = (rng_.unit() + rng_.unit() + rng_.unit() + rng_.unit()) / 2.0;
        return std::max<EpochSeconds>(1, static_cast<EpochSeconds>(mean * spread));
    }

    std::string fresh_text() {
        return std::string(rng_.pick(kVerbs)) + " " + rng_.pick(kNouns) + " " + std::to_string(++text_counter_);
    }

    Iri iri(const std::string& id) const { return schema_.entity_iri(id); }

    ChangeRecord record(ChangeKind kind, const std::string& id) const {
        ChangeRecord r;
        r.from_version = from_;
        r.to_version = from_ + 1;
        r.kind = kind;
        r.entity = iri(id);
        return r;
    }

    ChangeRecord relation_record(ChangeKind kind, const std::string& id, const std::string& relation,
                                 const std::string& target, bool entailed) const {
        ChangeRecord r = record(kind, id);
        r.property = schema_.predicate(relation);
        r.related_entity = iri(target);
        r.entailed = entailed;
        return r;
    }

    void make_alive(const std::string& id) {
        alive_index_[id] = alive_.size();
        alive_.push_back(id);
    }

    void make_dead(const std::string& id) {
        const std::size_t i = alive_index_.at(id);
        alive_index_[alive_.back()] = i;
        std::swap(alive_[i], alive_.back());
        alive_.pop_back();
        alive_index_.erase(id);
    }

    std::optional<std::string> untouched_entity() {
        if (alive_.empty()) return std::nullopt;
        for (int attempt = 0; attempt < 32; ++attempt) {
            const std::string& id = rng_.pick(alive_);
            if (!touched_.contains(id)) return id;
        }
        return std::nullopt;
    }

    // New non-module entity with texts, a module (usually) and up to two
    // references to untouched entities. Records only when `out` is given.
    void create_entity(std::vector<ChangeRecord>* out) {
        char buf[24];
        std::snprintf(buf, sizeof buf, "e%05u", ++entity_counter_);
        const std::string id = buf;
        ProcessEntity entity;
        entity.type = rng_.pick(kEntityTypes);
        entity.properties["name"].insert(fresh_text());
        if (rng_.chance(0.7)) entity.properties["description"].insert(fresh_text());
        const int ref_count = static_cast<int>(rng_.below(3));
        for (int i = 0; i < ref_count; ++i) {
            const auto target = untouched_entity();
            if (!target) break;
            const std::string relation = rng_.pick(plain_relations_);
            if (!entity.refs.emplace(relation, *target).second) continue;
            if (out) {
                touched_.insert(*target);
                out->push_back(relation_record(ChangeKind::RelationAdded, id, relation, *target, true));
            }
        }
        if (!modules_.empty() && !rng_.chance(config_.unassigned_fraction)) {
            const std::string& module = rng_.pick(modules_);
            model_.entities.at(module).refs.emplace(schema_.containment_relation, id);
            if (out) out->push_back(relation_record(ChangeKind::RelationAdded, module, schema_.containment_relation, id, true));
        }
        model_.entities.emplace(id, std::move(entity));
        make_alive(id);
        if (out) {
            touched_.insert(id);
            out->push_back(record(ChangeKind::EntityAdded, id));
        }
    }

    void populate() {
        for (std::uint32_t i = 1; i <= config_.module_count; ++i) {
            char buf[16];
            std::snprintf(buf, sizeof buf, "m%02u", i);
            ProcessEntity module;
            module.type = "ProcessModule";
            module.properties["name"].insert("Module " + std::to_string(i) + " " + rng_.pick(kNouns));
            model_.entities.emplace(buf, std::move(module));
            modules_.push_back(buf);
        }
        for (std::uint32_t i = config_.module_count; i < config_.initial_entity_count; ++i) create_entity(nullptr);
    }

    bool delete_entity(std::vector<ChangeRecord>& out) {
        const auto victim = untouched_entity();
        if (!victim) return false;
        const std::string id = *victim;
        for (const auto& [relation, target] : model_.entities.at(id).refs)
            out.push_back(relation_record(ChangeKind::RelationDeleted, id, relation, target, true));
        for (auto& [source, entity] : model_.entities) {
            for (auto it = entity.refs.begin(); it != entity.refs.end();) {
                if (it->second == id) {
                    out.push_back(relation_record(ChangeKind::RelationDeleted, source, it->first, id, true));
                    it = entity.refs.erase(it);
                } else {
                    ++it;
                }
            }
        }
        model_.entities.erase(id);
        make_dead(id);
        touched_.insert(id);
        out.push_back(record(ChangeKind::EntityDeleted, id));
        return true;
    }

    void add_relation(std::vector<ChangeRecord>& out) {
        for (int attempt = 0; attempt < 8; ++attempt) {
            const auto source = untouched_entity();
            const auto target = untouched_entity();
            if (!source || !target || *source == *target) continue;
            const std::string relation = rng_.pick(plain_relations_);
            if (!model_.entities.at(*source).refs.emplace(relation, *target).second) continue;
            touched_.insert(*source);
            touched_.insert(*target);
            out.push_back(relation_record(ChangeKind::RelationAdded, *source, relation, *target, false));
            return;
        }
    }

    void delete_relation(std::vector<ChangeRecord>& out) {
        for (int attempt = 0; attempt < 16; ++attempt) {
            const auto source = untouched_entity();
            if (!source) return;
            auto& refs = model_.entities.at(*source).refs;
            std::vector<std::pair<std::string, std::string>> candidates;
            for (const auto& ref : refs)
                if (ref.first != schema_.containment_relation && !touched_.contains(ref.second)) candidates.push_back(ref);
            if (candidates.empty()) continue;
            const auto ref = rng_.pick(candidates);
            refs.erase(ref);
            touched_.insert(*source);
            touched_.insert(ref.second);
            out.push_back(relation_record(ChangeKind::RelationDeleted, *source, ref.first, ref.second, false));
            return;
        }
    }

    void change_text(std::vector<ChangeRecord>& out) {
        const auto target = untouched_entity();
        if (!target) return;
        auto& properties = model_.entities.at(*target).properties;
        const std::string name = rng_.chance(0.5) ? "name" : "description";
        ChangeRecord r = record(ChangeKind::TextPropertyChanged, *target);
        r.property = schema_.predicate(name);
        if (const auto it = properties.find(name); it != properties.end())
            for (const std::string& v : it->second) r.old_values.insert(Literal(v));
        if (name == "description" && !r.old_values.empty() && rng_.chance(0.1)) {
            properties.erase(name);
        } else {
            const std::string text = fresh_text();
            properties[name] = {text};
            r.new_values.insert(Literal(text));
        }
        touched_.insert(*target);
        out.push_back(std::move(r));
    }

    std::vector<ChangeRecord> transition(VersionNumber v) {
        from_ = v - 1;
        touched_.clear();
        const double rate = config_.changes_per_version * config_.intensity_at(v);
        const auto op_count = static_cast<std::uint64_t>(rate * (rng_.unit() + rng_.unit()) + rng_.unit());

        double total_weight = 0;
        for (const auto& [kind, weight] : config_.change_kind_weights) total_weight += weight;
        std::vector<ChangeKind> ops;
        for (std::uint64_t i = 0; i < op_count; ++i) {
            double pick = rng_.unit() * total_weight;
            ChangeKind chosen = config_.change_kind_weights.rbegin()->first;
            for (const auto& [kind, weight] : config_.change_kind_weights) {
                if (weight > 0 && pick < weight) {
                    chosen = kind;
                    break;
                }
                pick -= weight;
            }
            ops.push_back(chosen);
        }

        // Deletions first; then exactly as many additions as the scripted
        // net growth requires.
        std::vector<ChangeRecord> out;
        const std::int64_t net = expected_count(v) - expected_count(v - 1);
        std::int64_t deletions = std::count(ops.begin(), ops.end(), ChangeKind::EntityDeleted);
        const std::int64_t additions = std::count(ops.begin(), ops.end(), ChangeKind::EntityAdded);
        if (additions - deletions > net) deletions = additions - net;
        std::int64_t deleted = 0;
        for (std::int64_t i = 0; i < deletions; ++i)
            if (delete_entity(out)) ++deleted;
        if (net + deleted < 0)
            throw InvalidConfig("version " + std::to_string(v) + ": too few entities left to shrink the model");
        for (std::int64_t i = 0; i < net + deleted; ++i) create_entity(&out);

        for (ChangeKind kind : ops) {
            switch (kind) {
            case ChangeKind::RelationAdded: add_relation(out); break;
            case ChangeKind::RelationDeleted: delete_relation(out); break;
            case ChangeKind::TextPropertyChanged: change_text(out); break;
            default: break;
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    const GeneratorConfig& config_;
    const FileSink& sink_;
    ProcessSchema schema_;
    Rng rng_;
    std::vector<std::string> plain_relations_;
    ProcessModel model_;
    std::vector<std::string> modules_;
    std::vector<std::string> alive_;
    std::map<std::string, std::size_t> alive_index_;
    std::set<std::string> touched_;
    std::uint32_t entity_counter_ = 0;
    std::uint64_t text_counter_ = 0;
    VersionNumber from_ = 0;
    GeneratedHistory history_;
};

} // namespace

GeneratedHistory generate(const GeneratorConfig& config, const FileSink& sink) {
    config.validate();
    return HistoryBuilder(config, sink).run();
}

GeneratedHistory generate_corpus(const GeneratorConfig& config, const std::filesystem::path& directory) {
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) throw StorageError("cannot create " + directory.string() + ": " + ec.message());
    return generate(config, [&](const std::string& name, const std::string& content) {
        text_io::write_file(directory / name, content);
    });
}

} // namespace procevo
