#include "procevo/graph.hpp"

#include <algorithm>
#include <iterator>

namespace procevo {

std::pair<Graph, bool> insert(Graph graph, Statement s) {
    const bool was_new = graph.insert(std::move(s));
    return {std::move(graph), was_new};
}

Graph difference(const Graph& a, const Graph& b) {
    std::vector<Statement> out;
    std::ranges::set_difference(a, b, std::back_inserter(out));
    return Graph(out);
}

Graph intersection(const Graph& a, const Graph& b) {
    std::vector<Statement> out;
    std::ranges::set_intersection(a, b, std::back_inserter(out));
    return Graph(out);
}

Graph graph_union(const Graph& a, const Graph& b) {
    std::vector<Statement> out;
    std::ranges::set_union(a, b, std::back_inserter(out));
    return Graph(out);
}

std::vector<Statement> statements_with_subject(const Graph& graph, const Iri& subject) {
    auto range = graph.with_subject(subject);
    return {range.begin(), range.end()};
}

} // namespace procevo
