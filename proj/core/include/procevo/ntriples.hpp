#ifndef PROCEVO_NTRIPLES_HPP
#define PROCEVO_NTRIPLES_HPP

#include "procevo/graph.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace procevo::ntriples {

// Line format, one statement per line:
//
//   <subject> <predicate> <object-iri> .
//   <subject> <predicate> "literal"@lang .
//
// Literal escapes: \\ \" \n \t (\r is also accepted on input). Lines that
// are blank or start with '#' are ignored.

/// Canonical single-line rendering of `s`, including the trailing " ." but no newline.
std::string statement_line(const Statement& s);

/// Parses one statement line. `line_number` is only used for error messages.
Statement parse_statement_line(std::string_view line, std::size_t line_number);

/// Throws ParseError with the offending 1-based line number.
Graph parse_graph(std::string_view document);

/// One newline-terminated line per statement, sorted by line bytes.
std::string serialize_graph(const Graph& graph);

/// Splits on '\n'. A final line without newline is kept; no empty trailing element.
std::vector<std::string_view> split_lines(std::string_view document);

} // namespace procevo::ntriples

#endif
