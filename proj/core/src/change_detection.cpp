#include "procevo/change_detection.hpp"

#include "procevo/error.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace procevo {

namespace {

bool has_subject(const Graph& graph, const Iri& subject) { return !graph.with_subject(subject).empty(); }

std::set<Iri> subjects_of(const Graph& graph) {
    std::set<Iri> out;
    for (const Statement& s : graph) out.insert(s.subject);
    return out;
}

std::set<Literal> literal_values(const Graph& graph, const Iri& subject, const Iri& predicate) {
    std::set<Literal> out;
    for (const Statement& s : graph.with_subject(subject))
        if (s.predicate == predicate)
            if (const auto* lit = std::get_if<Literal>(&s.object)) out.insert(*lit);
    return out;
}

class Detector {
public:
    Detector(const ComparisonModel& cm, const ProcessSchema& schema)
        : cm_(cm), schema_(schema), type_predicate_(schema.type_predicate()) {}

    DetectionResult run() {
        find_entity_changes(cm_.only_target(), cm_.only_base(), ChangeKind::EntityAdded, added_);
        find_entity_changes(cm_.only_base(), cm_.only_target(), ChangeKind::EntityDeleted, deleted_);
        scan(cm_.only_target(), VersionLabel::OnlyTarget);
        scan(cm_.only_base(), VersionLabel::OnlyBase);
        for (const auto& [entity, property] : text_changes_) {
            ChangeRecord r = stamped(ChangeKind::TextPropertyChanged, entity);
            r.property = property;
            r.old_values = literal_values(cm_.common(), entity, property);
            r.new_values = r.old_values;
            r.old_values.merge(literal_values(cm_.only_base(), entity, property));
            r.new_values.merge(literal_values(cm_.only_target(), entity, property));
            result_.records.push_back(std::move(r));
        }
        std::sort(result_.records.begin(), result_.records.end());
        return std::move(result_);
    }

private:
    ChangeRecord stamped(ChangeKind kind, const Iri& entity) const {
        ChangeRecord r;
        r.from_version = cm_.base_version;
        r.to_version = cm_.target_version;
        r.kind = kind;
        r.entity = entity;
        return r;
    }

    // Subjects of `side` that occur nowhere else in the model.
    void find_entity_changes(const Graph& side, const Graph& other_side, ChangeKind kind, std::set<Iri>& out) {
        for (const Iri& e : subjects_of(side)) {
            if (has_subject(cm_.common(), e) || has_subject(other_side, e)) continue;
            out.insert(e);
            result_.records.push_back(stamped(kind, e));
        }
    }

    bool entity_changed(const Iri& e) const { return added_.contains(e) || deleted_.contains(e); }

    void warn(const Statement& s, VersionLabel label, std::string message) {
        result_.warnings.push_back({cm_.base_version, cm_.target_version, s, label, std::move(message)});
    }

    void scan(const Graph& side, VersionLabel label) {
        const bool added = label == VersionLabel::OnlyTarget;
        for (const Statement& s : side) {
            const bool subject_changed = entity_changed(s.subject);
            if (s.predicate == type_predicate_) {
                if (!subject_changed) warn(s, label, "type of a surviving entity changed");
                continue;
            }
            if (schema_.is_relation(s.predicate)) {
                const auto* target = std::get_if<Iri>(&s.object);
                if (target == nullptr) {
                    warn(s, label, "relation with a literal object");
                    continue;
                }
                ChangeRecord r = stamped(added ? ChangeKind::RelationAdded : ChangeKind::RelationDeleted, s.subject);
                r.property = s.predicate;
                r.related_entity = *target;
                r.entailed = subject_changed || entity_changed(*target);
                result_.records.push_back(std::move(r));
                continue;
            }
            if (schema_.is_text_property(s.predicate)) {
                if (!is_literal(s.object)) {
                    warn(s, label, "text property with an IRI object");
                    continue;
                }
                if (!subject_changed) text_changes_.emplace(s.subject, s.predicate);
                continue;
            }
            warn(s, label, "predicate is not part of the schema");
        }
    }

    const ComparisonModel& cm_;
    const ProcessSchema& schema_;
    const Iri type_predicate_;
    std::set<Iri> added_;
    std::set<Iri> deleted_;
    std::set<std::pair<Iri, Iri>> text_changes_;
    DetectionResult result_;
};

} // namespace

DetectionResult detect_changes(const ComparisonModel& cm, const ProcessSchema& schema) {
    if (!cm.has_common()) throw Error("change detection needs a comparison model with its Common class");
    return Detector(cm, schema).run();
}

DetectionResult detect_history(const VersionRepository& repo) {
    DetectionResult all;
    std::optional<Graph> previous;
    VersionNumber previous_version = 0;
    repo.for_each_version([&](const VersionMeta& meta, const Graph& graph) {
        if (previous) {
            ComparisonModel cm = compare(*previous, graph);
            cm.base_version = previous_version;
            cm.target_version = meta.version;
            DetectionResult pair = detect_changes(cm, repo.schema());
            std::move(pair.records.begin(), pair.records.end(), std::back_inserter(all.records));
            std::move(pair.warnings.begin(), pair.warnings.end(), std::back_inserter(all.warnings));
        }
        previous = graph;
        previous_version = meta.version;
    });
    return all;
}

DetectionResult detect_and_store_history(VersionRepository& repo) {
    DetectionResult result = detect_history(repo);
    repo.store_change_records(result.records);
    return result;
}

} // namespace procevo
