#ifndef PROCEVO_QUERY_HPP
#define PROCEVO_QUERY_HPP

#include "procevo/comparison.hpp"
#include "procevo/graph.hpp"
#include "procevo/regex.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace procevo::query {

struct Variable {
    std::string name; // without the leading '?'

    friend bool operator==(const Variable&, const Variable&) = default;
    friend auto operator<=>(const Variable&, const Variable&) = default;
};

using PatternTerm = std::variant<Term, Variable>;

struct TriplePattern {
    PatternTerm subject;
    PatternTerm predicate;
    PatternTerm object;
    /// Only meaningful when evaluated against a ComparisonModel.
    std::optional<VersionLabel> label;
};

struct EqualsFilter {
    Variable variable;
    Term value;
};

/// Matches literals whose lexical form the pattern finds; never matches IRIs.
struct RegexFilter {
    Variable variable;
    regex::Pattern pattern;
};

using Filter = std::variant<EqualsFilter, RegexFilter>;

struct Query {
    std::vector<Variable> select;
    std::vector<TriplePattern> patterns;
    std::vector<Filter> filters;
    bool distinct = false;
};

/// Variable name -> bound term.
using Solution = std::map<std::string, Term>;

/// Parses the textual syntax (see README, "Query language"). `prefixes`
/// pre-declares prefixed-name namespaces; PREFIX lines in the text add to or
/// override them. `SELECT *` selects every pattern variable in order of first
/// appearance. Throws MalformedQuery.
Query parse(std::string_view text, const std::map<std::string, std::string>& prefixes = {});

/// Throws MalformedQuery when a selected or filtered variable occurs in no
/// pattern, or a concrete subject/predicate is not an IRI.
void validate(const Query& query);

/// Solutions projected onto query.select, sorted by their rendered rows;
/// DISTINCT drops repeated projected rows.
std::vector<Solution> evaluate(const Graph& graph, const Query& query);
/// As above; label constraints restrict a pattern to statements with that label.
std::vector<Solution> evaluate(const ComparisonModel& model, const Query& query);

/// Join order and access path chosen for each pattern, one line per step.
std::string explain(const Graph& graph, const Query& query);
std::string explain(const ComparisonModel& model, const Query& query);

/// Tab-separated table with a header row of `?var` names.
std::string format_table(const Query& query, const std::vector<Solution>& solutions);

std::string to_string(const PatternTerm& term);

} // namespace procevo::query

#endif
