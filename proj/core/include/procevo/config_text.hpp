#ifndef PROCEVO_CONFIG_TEXT_HPP
#define PROCEVO_CONFIG_TEXT_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace procevo::config {

// Minimal TOML-like text: one `key = value` per line, `#` starts a comment
// line, surrounding whitespace is trimmed, values may be wrapped in double
// quotes (no escapes inside). Lists are comma separated.

struct Entry {
    std::string key;
    std::string value;
    std::size_t line = 0;
};

/// Throws ParseError on a line without '=' or with an empty key, and on
/// repeated keys.
std::vector<Entry> parse(std::string_view text);

std::string_view trim(std::string_view text) noexcept;

/// Comma-separated items, trimmed; empty items dropped.
std::vector<std::string> split_list(std::string_view value);

} // namespace procevo::config

#endif
