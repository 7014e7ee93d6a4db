#ifndef PROCEVO_QUERY_ORACLE_HPP
#define PROCEVO_QUERY_ORACLE_HPP

#include "procevo/graph.hpp"
#include "procevo/query.hpp"
#include "procevo/regex.hpp"

#include "test_support.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace procevo::testing {

// A random basic graph pattern query kept in two forms: the query text for
// the engine and the raw slots for the nested-loop binder below.
struct RandomQuery {
    struct Slots {
        std::string s, p, o; // "?name" or a rendered term
    };
    std::vector<Slots> patterns;
    std::vector<std::string> select;
    bool distinct = false;
    std::string filter_var;
    std::string filter_regex;
    std::string equals_var;
    std::string equals_term;
    std::string text;
};

inline bool is_slot_var(const std::string& x) { return x[0] == '?'; }

// Patterns are cut from connected statements of the graph: each term is
// replaced by a variable (one per distinct term, so the chosen statements
// remain a solution) or kept as a constant.
inline RandomQuery random_query(Random& rng, const Graph& g) {
    static const std::vector<std::string> regexes = {"a", "^[^ ]+$", "[0-9]", "e$", "(lan|ch)", "^$"};
    RandomQuery q;
    const std::vector<Statement> items(g.begin(), g.end());
    std::vector<Statement> chosen{items[uniform(rng, items.size())]};
    const std::size_t n = 1 + uniform(rng, 3);
    while (chosen.size() < n) {
        // prefer a statement sharing a subject or linking an object to a subject
        std::vector<const Statement*> linked;
        for (const Statement& s : items)
            for (const Statement& c : chosen)
                if (s != c && (s.subject == c.subject || Term(s.subject) == c.object || Term(c.subject) == s.object)) {
                    linked.push_back(&s);
                    break;
                }
        chosen.push_back(linked.empty() ? items[uniform(rng, items.size())] : *linked[uniform(rng, linked.size())]);
    }
    std::map<std::string, std::string> var_of;
    std::map<std::string, Term> value_of; // first term each variable stood for
    auto slot = [&](const Term& t) {
        const std::string rendered = to_string(t);
        if (uniform(rng, 4) == 0) return rendered;
        const auto it = var_of.find(rendered);
        if (it != var_of.end() && uniform(rng, 6) != 0) return it->second;
        const std::string v = "?v" + std::to_string(var_of.size());
        var_of[rendered] = v;
        value_of.emplace(v, t);
        return v;
    };
    for (const Statement& c : chosen) {
        std::string subject = slot(c.subject);
        std::string predicate = slot(c.predicate);
        std::string object = slot(c.object);
        q.patterns.push_back({std::move(subject), std::move(predicate), std::move(object)});
    }
    std::vector<std::string> used;
    for (const auto& p : q.patterns)
        for (const std::string* x : {&p.s, &p.p, &p.o})
            if (is_slot_var(*x) && std::find(used.begin(), used.end(), *x) == used.end()) used.push_back(*x);
    if (used.empty()) {
        q.patterns[0].s = "?a";
        used.push_back("?a");
    }
    q.distinct = uniform(rng, 2) == 0;
    for (const std::string& v : used)
        if (q.select.empty() || uniform(rng, 2) == 0) q.select.push_back(v);

    q.text = "SELECT ";
    if (q.distinct) q.text += "DISTINCT ";
    for (const std::string& v : q.select) q.text += v + " ";
    q.text += "WHERE {\n";
    for (const auto& p : q.patterns) q.text += "  " + p.s + " " + p.p + " " + p.o + " .\n";
    std::vector<std::string> literal_vars;
    for (const std::string& v : used)
        if (const auto it = value_of.find(v); it != value_of.end() && is_literal(it->second)) literal_vars.push_back(v);
    if (uniform(rng, 2) == 0) {
        q.filter_var = !literal_vars.empty() && uniform(rng, 4) != 0 ? literal_vars[uniform(rng, literal_vars.size())]
                                                                     : used[uniform(rng, used.size())];
        q.filter_regex = regexes[uniform(rng, regexes.size())];
        q.text += "  FILTER(regex(" + q.filter_var + ", \"" + q.filter_regex + "\", \"i\"))\n";
    }
    if (uniform(rng, 4) == 0) {
        q.equals_var = used[uniform(rng, used.size())];
        const Statement& pick = items[uniform(rng, items.size())];
        const auto known = value_of.find(q.equals_var);
        q.equals_term = known != value_of.end() && uniform(rng, 4) != 0
                            ? to_string(known->second)
                            : to_string(uniform(rng, 2) ? pick.object : Term(pick.subject));
        q.text += "  FILTER(" + q.equals_var + " = " + q.equals_term + ")\n";
    }
    q.text += "}";
    return q;
}

namespace detail {

inline bool bind_slot(query::Solution& sol, const std::string& slot, const Term& value) {
    if (!is_slot_var(slot)) return to_string(value) == slot;
    const auto [it, inserted] = sol.emplace(slot.substr(1), value);
    return inserted || it->second == value;
}

struct Enumeration {
    const Graph& graph;
    const RandomQuery& query;
    const regex::Pattern& re;
    std::size_t budget;
    std::vector<query::Solution> rows;

    bool accept(const query::Solution& s) const {
        if (!query.filter_var.empty()) {
            const auto* lit = std::get_if<Literal>(&s.at(query.filter_var.substr(1)));
            if (!lit || !re.search(lit->lexical())) return false;
        }
        return query.equals_var.empty() || to_string(s.at(query.equals_var.substr(1))) == query.equals_term;
    }

    // False once the budget of complete bindings is used up.
    bool run(std::size_t i, const query::Solution& sol) {
        if (i == query.patterns.size()) {
            if (budget-- == 0) return false;
            if (!accept(sol)) return true;
            query::Solution projected;
            for (const std::string& v : query.select) projected.emplace(v.substr(1), sol.at(v.substr(1)));
            rows.push_back(std::move(projected));
            return true;
        }
        for (const Statement& s : graph) {
            query::Solution next = sol;
            if (bind_slot(next, query.patterns[i].s, s.subject) && bind_slot(next, query.patterns[i].p, s.predicate) &&
                bind_slot(next, query.patterns[i].o, s.object) && !run(i + 1, next))
                return false;
        }
        return true;
    }
};

} // namespace detail

/// Every binding of the patterns, tried statement by statement in written
/// order, then filtered, projected and sorted. Rows are ordered by
/// std::map comparison, not by the engine's rendered-row order. Returns
/// nullopt when there are more than `budget` bindings.
inline std::optional<std::vector<query::Solution>> brute_force(const Graph& g, const RandomQuery& q,
                                                               std::size_t budget = 20000) {
    const regex::Pattern re = regex::Pattern::compile(q.filter_regex, true);
    detail::Enumeration e{g, q, re, budget, {}};
    if (!e.run(0, {})) return std::nullopt;
    std::vector<query::Solution> out = std::move(e.rows);
    std::sort(out.begin(), out.end());
    if (q.distinct) out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace procevo::testing

#endif
