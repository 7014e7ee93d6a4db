#ifndef PROCEVO_GRAPH_HPP
#define PROCEVO_GRAPH_HPP

#include "procevo/term.hpp"

#include <cstddef>
#include <initializer_list>
#include <ranges>
#include <set>
#include <utility>
#include <vector>

namespace procevo {

namespace detail {

// Orders statements componentwise and also compares against a bare subject
// so that subject ranges can be located without building a probe statement.
struct StatementLess {
    using is_transparent = void;

    bool operator()(const Statement& a, const Statement& b) const noexcept { return a < b; }
    bool operator()(const Statement& a, const Iri& subject) const noexcept { return a.subject < subject; }
    bool operator()(const Iri& subject, const Statement& b) const noexcept { return subject < b.subject; }
};

} // namespace detail

/// A set of statements: one model version.
///
/// Iteration order is componentwise (subject, predicate, object), which is
/// also what the merge-based set operations below rely on.
class Graph {
public:
    using container_type = std::set<Statement, detail::StatementLess>;
    using const_iterator = container_type::const_iterator;

    Graph() = default;
    Graph(std::initializer_list<Statement> statements) : statements_(statements) {}

    template <std::ranges::input_range R>
    explicit Graph(const R& statements) : statements_(std::ranges::begin(statements), std::ranges::end(statements)) {}

    /// Returns true iff `s` was not already present.
    bool insert(Statement s) { return statements_.insert(std::move(s)).second; }
    bool erase(const Statement& s) { return statements_.erase(s) > 0; }

    bool contains(const Statement& s) const { return statements_.contains(s); }
    std::size_t size() const noexcept { return statements_.size(); }
    bool empty() const noexcept { return statements_.empty(); }

    const_iterator begin() const noexcept { return statements_.begin(); }
    const_iterator end() const noexcept { return statements_.end(); }

    /// Contiguous range of the statements whose subject is `subject`.
    std::ranges::subrange<const_iterator> with_subject(const Iri& subject) const {
        auto [first, last] = statements_.equal_range(subject);
        return {first, last};
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.statements_ == b.statements_; }

private:
    container_type statements_;
};

/// Value-returning insert: the graph is copied, never modified in place.
std::pair<Graph, bool> insert(Graph graph, Statement s);

Graph difference(const Graph& a, const Graph& b);
Graph intersection(const Graph& a, const Graph& b);
Graph graph_union(const Graph& a, const Graph& b);

std::vector<Statement> statements_with_subject(const Graph& graph, const Iri& subject);

} // namespace procevo

#endif
