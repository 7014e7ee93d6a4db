#ifndef PROCEVO_CHANGE_RECORD_HPP
#define PROCEVO_CHANGE_RECORD_HPP

#include "procevo/comparison.hpp"
#include "procevo/graph.hpp"

#include <array>
#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace procevo {

enum class ChangeKind { EntityAdded, EntityDeleted, RelationAdded, RelationDeleted, TextPropertyChanged };

inline constexpr std::array<ChangeKind, 5> kAllChangeKinds = {
    ChangeKind::EntityAdded, ChangeKind::EntityDeleted, ChangeKind::RelationAdded, ChangeKind::RelationDeleted,
    ChangeKind::TextPropertyChanged};

std::string_view to_string(ChangeKind kind) noexcept;
std::optional<ChangeKind> parse_change_kind(std::string_view name) noexcept;

/// One typed change to an entity between two versions.
///
/// Member order is the canonical record order: version pair first, then
/// (kind, entity, property, related entity).
struct ChangeRecord {
    VersionNumber from_version = 0;
    VersionNumber to_version = 0;
    ChangeKind kind = ChangeKind::EntityAdded;
    Iri entity{"urn:procevo:unset"};
    std::optional<Iri> property;
    std::optional<Iri> related_entity;
    std::set<Literal> old_values;
    std::set<Literal> new_values;
    /// Relation change implied by adding or deleting one of its endpoints.
    bool entailed = false;

    friend bool operator==(const ChangeRecord&, const ChangeRecord&) = default;
    friend std::strong_ordering operator<=>(const ChangeRecord&, const ChangeRecord&) = default;
};

/// Empty string when the record satisfies the per-kind field invariants,
/// otherwise a description of the violation.
std::string validate(const ChangeRecord& record);

namespace change_vocab {

inline constexpr std::string_view kNamespace = "urn:procevo:change#";
inline constexpr std::string_view kNodePrefix = "urn:procevo:change:";

Iri term(std::string_view local);

} // namespace change_vocab

/// Deterministic node IRI for a record: a hash of every field.
Iri change_node_iri(const ChangeRecord& record);

/// One node per record; one statement per field. Absent optionals, empty
/// value sets and a false `entailed` flag produce no statements.
Graph encode_changes_as_graph(const std::vector<ChangeRecord>& records);

/// Exact inverse of encode_changes_as_graph; records come back in canonical
/// order without duplicates. Throws MalformedChangeGraph.
std::vector<ChangeRecord> decode_changes_from_graph(const Graph& graph);

// CSV columns: kind,fromVersion,toVersion,entity,property,relatedEntity,
// oldValues,newValues,entailed. Value sets are sorted and joined with '|';
// inside a value '\', '|' and '@' are backslash-escaped, and an unescaped
// '@' introduces the language tag; \e stands for the empty string. Fields
// are RFC 4180 quoted when needed.
inline constexpr std::string_view kChangeCsvHeader =
    "kind,fromVersion,toVersion,entity,property,relatedEntity,oldValues,newValues,entailed";

std::string export_changes_csv(const std::vector<ChangeRecord>& records);
std::vector<ChangeRecord> parse_changes_csv(std::string_view document);

} // namespace procevo

#endif
