#ifndef PROCEVO_COMPARISON_HPP
#define PROCEVO_COMPARISON_HPP

#include "procevo/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace procevo {

using VersionNumber = std::uint32_t;

enum class VersionLabel { Common, OnlyBase, OnlyTarget };

std::string_view to_string(VersionLabel label) noexcept;

/// Labeled union of two versions' statements.
///
/// The three label classes are held as separate graphs, so a statement can
/// never carry two labels. A model parsed from a change-only export (as used
/// for repository deltas) has an empty Common class and `has_common()` false.
class ComparisonModel {
public:
    ComparisonModel() = default;
    ComparisonModel(Graph common, Graph only_base, Graph only_target, bool has_common = true)
        : common_(std::move(common)), only_base_(std::move(only_base)), only_target_(std::move(only_target)),
          has_common_(has_common) {}

    VersionNumber base_version = 0;
    VersionNumber target_version = 0;

    const Graph& common() const noexcept { return common_; }
    const Graph& only_base() const noexcept { return only_base_; }
    const Graph& only_target() const noexcept { return only_target_; }
    const Graph& with_label(VersionLabel label) const noexcept;

    /// False for change-only models whose Common class was not recorded.
    bool has_common() const noexcept { return has_common_; }

    std::size_t size() const noexcept { return common_.size() + only_base_.size() + only_target_.size(); }
    std::optional<VersionLabel> label_of(const Statement& s) const;

    /// Same model with OnlyBase and OnlyTarget exchanged.
    ComparisonModel reversed() const;

    /// Drops the Common class; what the repository stores as a delta.
    ComparisonModel changes_only() const;

    friend bool operator==(const ComparisonModel& a, const ComparisonModel& b) {
        return a.common_ == b.common_ && a.only_base_ == b.only_base_ && a.only_target_ == b.only_target_ &&
               a.has_common_ == b.has_common_;
    }

private:
    Graph common_;
    Graph only_base_;
    Graph only_target_;
    bool has_common_ = true;
};

/// Single merge pass over both (sorted) graphs.
ComparisonModel compare(const Graph& base, const Graph& target);

/// Reconstructs the target of `cm` from its base. Throws BaseMismatch when
/// `base` is not the graph `cm` was computed against (for change-only models:
/// when a removed statement is absent or an added one already present).
Graph apply_delta(const Graph& base, const ComparisonModel& cm);

/// In-place variant of apply_delta, used when replaying many deltas.
void apply_delta_in_place(Graph& base, const ComparisonModel& cm);

// Export format: the canonical statement line prefixed by "= " (Common),
// "- " (OnlyBase) or "+ " (OnlyTarget). Lines are grouped in that order and
// sorted by bytes within each group.
std::string export_comparison(const ComparisonModel& cm);

/// Inverse of export_comparison. Pass `with_common = false` for delta files,
/// whose Common class was dropped on export. Throws ParseError.
ComparisonModel parse_comparison(std::string_view document, bool with_common = true);

} // namespace procevo

#endif
