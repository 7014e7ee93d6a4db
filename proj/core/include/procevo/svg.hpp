#ifndef PROCEVO_SVG_HPP
#define PROCEVO_SVG_HPP

#include "procevo/analytics.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace procevo::svg {

enum class PlotKind {
    /// One polyline per series over a numeric y axis (entity counts).
    Line,
    /// One row per series; a circle per point with area proportional to the
    /// value (change distribution).
    Bubble,
    /// Bars of the first series (version density).
    Bar,
};

/// Radius of the bubble for `count`: 2 * sqrt(count), so area grows
/// linearly with the count.
double bubble_radius(std::uint64_t count);

/// Throws EmptySeries when no series has a point.
std::string render_series(const std::vector<MetricSeries>& series, PlotKind kind, std::string_view title);

/// Dot plot: one row per entity, a dot at each version with a change.
/// Throws EmptySeries when the matrix has no rows.
std::string render_matrix(const ChangeMatrix& matrix, std::string_view title);

} // namespace procevo::svg

#endif
