#ifndef PROCEVO_CSV_HPP
#define PROCEVO_CSV_HPP

#include <string>
#include <string_view>
#include <vector>

namespace procevo::csv {

/// RFC 4180 quoting: the field is quoted only when it contains ',', '"', CR or LF.
std::string quote(std::string_view field);

/// Joins already-unquoted fields into one record line (no trailing newline).
std::string row(const std::vector<std::string>& fields);

/// Splits a document into records of fields, honoring quoted fields that
/// span lines. Throws ParseError on an unterminated quote.
std::vector<std::vector<std::string>> parse(std::string_view document);

} // namespace procevo::csv

#endif
