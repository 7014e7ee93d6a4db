#include "procevo/comparison.hpp"

#include "procevo/error.hpp"
#include "procevo/ntriples.hpp"

#include <algorithm>
#include <vector>

namespace procevo {

std::string_view to_string(VersionLabel label) noexcept {
    switch (label) {
    case VersionLabel::Common: return "Common";
    case VersionLabel::OnlyBase: return "OnlyBase";
    case VersionLabel::OnlyTarget: return "OnlyTarget";
    }
    return "?";
}

const Graph& ComparisonModel::with_label(VersionLabel label) const noexcept {
    switch (label) {
    case VersionLabel::OnlyBase: return only_base_;
    case VersionLabel::OnlyTarget: return only_target_;
    case VersionLabel::Common: break;
    }
    return common_;
}

std::optional<VersionLabel> ComparisonModel::label_of(const Statement& s) const {
    if (common_.contains(s)) return VersionLabel::Common;
    if (only_base_.contains(s)) return VersionLabel::OnlyBase;
    if (only_target_.contains(s)) return VersionLabel::OnlyTarget;
    return std::nullopt;
}

ComparisonModel ComparisonModel::reversed() const {
    ComparisonModel out(common_, only_target_, only_base_, has_common_);
    out.base_version = target_version;
    out.target_version = base_version;
    return out;
}

ComparisonModel ComparisonModel::changes_only() const {
    ComparisonModel out(Graph{}, only_base_, only_target_, false);
    out.base_version = base_version;
    out.target_version = target_version;
    return out;
}

ComparisonModel compare(const Graph& base, const Graph& target) {
    std::vector<Statement> common;
    std::vector<Statement> only_base;
    std::vector<Statement> only_target;
    auto b = base.begin();
    auto t = target.begin();
    while (b != base.end() && t != target.end()) {
        const auto order = *b <=> *t;
        if (order < 0) {
            only_base.push_back(*b++);
        } else if (order > 0) {
            only_target.push_back(*t++);
        } else {
            common.push_back(*b++);
            ++t;
        }
    }
    only_base.insert(only_base.end(), b, base.end());
    only_target.insert(only_target.end(), t, target.end());
    return ComparisonModel(Graph(common), Graph(only_base), Graph(only_target));
}

namespace {

void check_base(const Graph& base, const ComparisonModel& cm) {
    for (const Statement& s : cm.only_base())
        if (!base.contains(s)) throw BaseMismatch("statement to remove is absent from base: " + ntriples::statement_line(s));
    for (const Statement& s : cm.only_target())
        if (base.contains(s)) throw BaseMismatch("statement to add is already in base: " + ntriples::statement_line(s));
    if (!cm.has_common()) return;
    if (base.size() != cm.common().size() + cm.only_base().size())
        throw BaseMismatch("base has " + std::to_string(base.size()) + " statements, comparison expects " +
                           std::to_string(cm.common().size() + cm.only_base().size()));
    for (const Statement& s : cm.common())
        if (!base.contains(s)) throw BaseMismatch("common statement is absent from base: " + ntriples::statement_line(s));
}

} // namespace

void apply_delta_in_place(Graph& base, const ComparisonModel& cm) {
    check_base(base, cm);
    for (const Statement& s : cm.only_base()) base.erase(s);
    for (const Statement& s : cm.only_target()) base.insert(s);
}

Graph apply_delta(const Graph& base, const ComparisonModel& cm) {
    Graph out = base;
    apply_delta_in_place(out, cm);
    return out;
}

namespace {

void append_group(std::string& out, const Graph& graph, std::string_view prefix) {
    std::vector<std::string> lines;
    lines.reserve(graph.size());
    for (const Statement& s : graph) lines.push_back(ntriples::statement_line(s));
    std::sort(lines.begin(), lines.end());
    for (const std::string& line : lines) {
        out += prefix;
        out += line;
        out.push_back('\n');
    }
}

} // namespace

std::string export_comparison(const ComparisonModel& cm) {
    std::string out;
    append_group(out, cm.common(), "= ");
    append_group(out, cm.only_base(), "- ");
    append_group(out, cm.only_target(), "+ ");
    return out;
}

ComparisonModel parse_comparison(std::string_view document, bool with_common) {
    Graph common;
    Graph only_base;
    Graph only_target;
    std::size_t number = 0;
    for (std::string_view line : ntriples::split_lines(document)) {
        ++number;
        if (line.empty() || line == "\r" || line.front() == '#') continue;
        if (line.size() < 2 || line[1] != ' ') throw ParseError(number, "expected label prefix '= ', '- ' or '+ '");
        Graph* group = nullptr;
        switch (line[0]) {
        case '=':
            if (!with_common) throw ParseError(number, "common statement in a change-only document");
            group = &common;
            break;
        case '-': group = &only_base; break;
        case '+': group = &only_target; break;
        default: throw ParseError(number, "unknown label prefix '" + std::string(1, line[0]) + "'");
        }
        Statement s = ntriples::parse_statement_line(line.substr(2), number);
        const bool labeled_elsewhere = (group != &common && common.contains(s)) ||
                                       (group != &only_base && only_base.contains(s)) ||
                                       (group != &only_target && only_target.contains(s));
        if (labeled_elsewhere) throw ParseError(number, "statement carries more than one label");
        group->insert(std::move(s));
    }
    return ComparisonModel(std::move(common), std::move(only_base), std::move(only_target), with_common);
}

} // namespace procevo
