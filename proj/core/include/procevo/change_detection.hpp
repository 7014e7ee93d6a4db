#ifndef PROCEVO_CHANGE_DETECTION_HPP
#define PROCEVO_CHANGE_DETECTION_HPP

#include "procevo/change_record.hpp"
#include "procevo/comparison.hpp"
#include "procevo/schema.hpp"
#include "procevo/version_repository.hpp"

#include <string>
#include <vector>

namespace procevo {

/// A changed statement that no change pattern explains: its predicate is not
/// part of the schema, its object has the wrong kind, or it retypes an entity
/// that survives the comparison.
struct SchemaWarning {
    VersionNumber from_version = 0;
    VersionNumber to_version = 0;
    Statement statement;
    VersionLabel label = VersionLabel::OnlyTarget;
    std::string message;

    friend bool operator==(const SchemaWarning&, const SchemaWarning&) = default;
};

struct DetectionResult {
    /// Canonical record order.
    std::vector<ChangeRecord> records;
    std::vector<SchemaWarning> warnings;
};

/// Matches the five change patterns on `cm`:
///   EntityAdded(e)    e is subject of an OnlyTarget statement and of no
///                     Common or OnlyBase statement
///   EntityDeleted(e)  the mirror image
///   RelationAdded     OnlyTarget (e, r, e2) with r a relation and e2 an IRI;
///                     entailed iff e or e2 is added or deleted
///   RelationDeleted   the mirror image
///   TextPropertyChanged(e, p)
///                     e survives and its value set for text property p
///                     differs between base and target
/// Records carry cm's version pair. `cm` must include its Common class.
DetectionResult detect_changes(const ComparisonModel& cm, const ProcessSchema& schema);

/// detect_changes over every pair of consecutive stored versions. Nothing is
/// stored; see detect_and_store_history.
DetectionResult detect_history(const VersionRepository& repo);

/// detect_history followed by store_change_records on `repo`.
DetectionResult detect_and_store_history(VersionRepository& repo);

} // namespace procevo

#endif
