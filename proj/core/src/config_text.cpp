#include "procevo/config_text.hpp"

#include "procevo/error.hpp"
#include "procevo/ntriples.hpp"

#include <set>

namespace procevo::config {

std::string_view trim(std::string_view text) noexcept {
    const std::size_t first = text.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const std::size_t last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

std::vector<Entry> parse(std::string_view text) {
    std::vector<Entry> entries;
    std::set<std::string, std::less<>> seen;
    std::size_t number = 0;
    for (std::string_view raw : ntriples::split_lines(text)) {
        ++number;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(number, "expected 'key = value'");
        const std::string_view key = trim(line.substr(0, eq));
        std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(number, "empty key");
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        if (!seen.emplace(key).second) throw ParseError(number, "duplicate key '" + std::string(key) + "'");
        entries.push_back({std::string(key), std::string(value), number});
    }
    return entries;
}

std::vector<std::string> split_list(std::string_view value) {
    std::vector<std::string> items;
    std::size_t start = 0;
    while (start <= value.size()) {
        std::size_t end = value.find(',', start);
        if (end == std::string_view::npos) end = value.size();
        const std::string_view item = trim(value.substr(start, end - start));
        if (!item.empty()) items.emplace_back(item);
        start = end + 1;
    }
    return items;
}

} // namespace procevo::config
