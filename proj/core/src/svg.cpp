#include "procevo/svg.hpp"

#include "procevo/error.hpp"
#include "procevo/process_xml.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace procevo::svg {

namespace {

constexpr double kWidth = 960;
constexpr double kLeft = 150;
constexpr double kRight = 30;
constexpr double kTop = 40;
constexpr double kBottom = 50;
constexpr double kLineHeight = 320;

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string short_label(std::string_view group) {
    const std::size_t cut = group.find_last_of(":/#");
    return std::string(cut == std::string_view::npos || cut + 1 == group.size() ? group : group.substr(cut + 1));
}

std::string tick_label(std::int64_t x, XAxis axis) {
    return axis == XAxis::Version ? std::to_string(x) : format_date(x);
}

class Canvas {
public:
    Canvas(double height, std::string_view title) : height_(height) {
        out_ = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(height) +
                "\" viewBox=\"0 0 " + num(kWidth) + " " + num(height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
        out_ += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        text(kWidth / 2, 22, title, "middle", 14);
    }

    void text(double x, double y, std::string_view s, std::string_view anchor = "start", int size = 11) {
        out_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" text-anchor=\"" + std::string(anchor) + "\"";
        if (size != 11) out_ += " font-size=\"" + std::to_string(size) + "\"";
        out_ += ">" + xml_escape(s, false) + "</text>\n";
    }

    void line(double x1, double y1, double x2, double y2, std::string_view stroke = "#000") {
        out_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
                "\" stroke=\"" + std::string(stroke) + "\"/>\n";
    }

    void raw(const std::string& element) { out_ += element; }

    std::string finish() {
        out_ += "</svg>\n";
        return std::move(out_);
    }

    double height() const { return height_; }

private:
    double height_;
    std::string out_;
};

struct Range {
    std::int64_t lo = 0;
    std::int64_t hi = 0;

    double scale(std::int64_t x, double from, double to) const {
        if (hi == lo) return (from + to) / 2;
        return from + (to - from) * static_cast<double>(x - lo) / static_cast<double>(hi - lo);
    }
};

Range x_range(const std::vector<MetricSeries>& series) {
    Range r{INT64_MAX, INT64_MIN};
    for (const MetricSeries& s : series)
        for (const MetricPoint& p : s.points) {
            r.lo = std::min(r.lo, p.x);
            r.hi = std::max(r.hi, p.x);
        }
    return r;
}

void x_axis(Canvas& c, const Range& r, XAxis axis, double y) {
    const double x0 = kLeft;
    const double x1 = kWidth - kRight;
    c.line(x0, y, x1, y);
    constexpr int kTicks = 6;
    std::int64_t previous = INT64_MIN;
    for (int i = 0; i <= kTicks; ++i) {
        const std::int64_t v = r.lo + (r.hi - r.lo) * i / kTicks;
        if (v == previous) continue;
        previous = v;
        const double x = r.scale(v, x0, x1);
        c.line(x, y, x, y + 4);
        c.text(x, y + 16, tick_label(v, axis), "middle");
    }
    c.text((x0 + x1) / 2, y + 34, axis == XAxis::Version ? "version" : "date", "middle");
}

std::string render_line(const std::vector<MetricSeries>& series, std::string_view title) {
    const double legend = 14.0 * static_cast<double>(series.size());
    Canvas c(kTop + kLineHeight + kBottom + legend + 10, title);
    const Range xr = x_range(series);
    std::uint64_t ymax = 1;
    for (const MetricSeries& s : series)
        for (const MetricPoint& p : s.points) ymax = std::max(ymax, p.value);
    const Range yr{0, static_cast<std::int64_t>(ymax)};
    const double y_bottom = kTop + kLineHeight;
    c.line(kLeft, kTop, kLeft, y_bottom);
    for (int i = 0; i <= 4; ++i) {
        const std::int64_t v = yr.hi * i / 4;
        const double y = yr.scale(v, y_bottom, kTop);
        c.line(kLeft - 4, y, kLeft, y);
        c.text(kLeft - 6, y + 4, std::to_string(v), "end");
    }
    x_axis(c, xr, series.front().x_axis, y_bottom);
    for (std::size_t i = 0; i < series.size(); ++i) {
        const std::string color = kPalette[i % std::size(kPalette)];
        std::string points;
        for (const MetricPoint& p : series[i].points) {
            if (!points.empty()) points.push_back(' ');
            points += num(xr.scale(p.x, kLeft, kWidth - kRight)) + "," + num(yr.scale(static_cast<std::int64_t>(p.value), y_bottom, kTop));
        }
        c.raw("<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n");
        const double ly = y_bottom + kBottom + 14.0 * static_cast<double>(i) + 4;
        c.line(kLeft, ly - 4, kLeft + 20, ly - 4, color);
        c.text(kLeft + 26, ly, short_label(series[i].group));
    }
    return c.finish();
}

std::string render_bubble(const std::vector<MetricSeries>& series, std::string_view title) {
    constexpr double kRow = 24;
    const double rows_height = kRow * static_cast<double>(series.size());
    Canvas c(kTop + rows_height + kBottom, title);
    const Range xr = x_range(series);
    const double y_bottom = kTop + rows_height;
    c.line(kLeft, kTop, kLeft, y_bottom);
    x_axis(c, xr, series.front().x_axis, y_bottom);
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double y = kTop + kRow * (static_cast<double>(i) + 0.5);
        const std::string color = kPalette[i % std::size(kPalette)];
        c.line(kLeft, y, kWidth - kRight, y, "#eee");
        c.text(kLeft - 6, y + 4, short_label(series[i].group), "end");
        for (const MetricPoint& p : series[i].points)
            c.raw("<circle cx=\"" + num(xr.scale(p.x, kLeft, kWidth - kRight)) + "\" cy=\"" + num(y) + "\" r=\"" +
                  num(bubble_radius(p.value)) + "\" fill=\"" + color + "\" fill-opacity=\"0.6\"/>\n");
    }
    return c.finish();
}

std::string render_bar(const MetricSeries& series, std::string_view title) {
    constexpr double kBarHeight = 160;
    Canvas c(kTop + kBarHeight + kBottom, title);
    const double y_bottom = kTop + kBarHeight;
    std::uint64_t ymax = 1;
    for (const MetricPoint& p : series.points) ymax = std::max(ymax, p.value);
    const double plot_width = kWidth - kLeft - kRight;
    const double step = plot_width / static_cast<double>(series.points.size());
    c.line(kLeft, kTop, kLeft, y_bottom);
    c.line(kLeft, y_bottom, kWidth - kRight, y_bottom);
    c.text(kLeft - 6, kTop + 4, std::to_string(ymax), "end");
    c.text(kLeft - 6, y_bottom, "0", "end");
    for (std::size_t i = 0; i < series.points.size(); ++i) {
        const MetricPoint& p = series.points[i];
        const double h = kBarHeight * static_cast<double>(p.value) / static_cast<double>(ymax);
        if (h > 0)
            c.raw("<rect x=\"" + num(kLeft + step * static_cast<double>(i)) + "\" y=\"" + num(y_bottom - h) +
                  "\" width=\"" + num(std::max(step * 0.9, 0.5)) + "\" height=\"" + num(h) + "\" fill=\"#4c72b0\"/>\n");
    }
    c.text(kLeft, y_bottom + 16, tick_label(series.points.front().x, series.x_axis), "start");
    c.text(kWidth - kRight, y_bottom + 16, tick_label(series.points.back().x, series.x_axis), "end");
    return c.finish();
}

} // namespace

double bubble_radius(std::uint64_t count) { return 2.0 * std::sqrt(static_cast<double>(count)); }

std::string render_series(const std::vector<MetricSeries>& series, PlotKind kind, std::string_view title) {
    std::vector<MetricSeries> plotted;
    std::copy_if(series.begin(), series.end(), std::back_inserter(plotted),
                 [](const MetricSeries& s) { return !s.points.empty(); });
    if (plotted.empty()) throw EmptySeries("nothing to plot: every series is empty");
    switch (kind) {
    case PlotKind::Line: return render_line(plotted, title);
    case PlotKind::Bubble: return render_bubble(plotted, title);
    case PlotKind::Bar: return render_bar(plotted.front(), title);
    }
    return {};
}

std::string render_matrix(const ChangeMatrix& matrix, std::string_view title) {
    if (matrix.entities.empty()) throw EmptySeries("module " + matrix.module.str() + " never contains an entity");
    constexpr double kRow = 4;
    const double rows_height = std::max(kRow * static_cast<double>(matrix.entities.size()), 40.0);
    Canvas c(kTop + rows_height + kBottom, title);
    Range xr{INT64_MAX, INT64_MIN};
    for (const ChangeCell& cell : matrix.cells) {
        xr.lo = std::min<std::int64_t>(xr.lo, cell.version);
        xr.hi = std::max<std::int64_t>(xr.hi, cell.version);
    }
    if (matrix.cells.empty()) xr = {0, 1};
    const double y_bottom = kTop + rows_height;
    c.line(kLeft, kTop, kLeft, y_bottom);
    c.text(kLeft - 6, kTop + 8, "entity 0", "end");
    c.text(kLeft - 6, y_bottom, "entity " + std::to_string(matrix.entities.size() - 1), "end");
    x_axis(c, xr, XAxis::Version, y_bottom);
    for (const ChangeCell& cell : matrix.cells) {
        const double y = kTop + rows_height * (static_cast<double>(cell.entity_index) + 0.5) /
                                    static_cast<double>(matrix.entities.size());
        c.raw("<circle cx=\"" + num(xr.scale(cell.version, kLeft, kWidth - kRight)) + "\" cy=\"" + num(y) +
              "\" r=\"1.50\" fill=\"#000\"/>\n");
    }
    return c.finish();
}

} // namespace procevo::svg
