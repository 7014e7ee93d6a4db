#ifndef PROCEVO_REGEX_HPP
#define PROCEVO_REGEX_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace procevo::regex {

/// Compiled pattern of the query-filter regex dialect.
///
/// Supported syntax, matched over Unicode code points:
///   literal characters, `.` (anything but CR and LF), `[...]` / `[^...]`
///   classes with ranges, `\d \D \w \W \s \S`, escapes `\n \t \r` and `\`
///   before any punctuation, groups `( )`, alternation `|`, quantifiers
///   `* + ? {n} {n,} {n,m}` (bounds up to 1000), anchors `^` and `$`
///   (whole-text start and end).
/// Matching is a search: the pattern may match anywhere unless anchored.
/// The `i` flag folds ASCII letters only. Evaluation is a Thompson NFA
/// simulation, linear in text length for a fixed pattern.
class Pattern {
public:
    /// Throws MalformedQuery on syntax errors.
    static Pattern compile(std::string_view pattern, bool ignore_case = false);

    bool search(std::string_view text) const;

    const std::string& source() const noexcept { return source_; }

private:
    struct CharSet {
        bool negated = false;
        std::vector<std::pair<char32_t, char32_t>> ranges;
        /// True when `c` (or its case variant `alt`) is selected by the set.
        bool matches(char32_t c, char32_t alt) const noexcept;
    };
    enum class Op : std::uint8_t { Set, Split, Jmp, Bol, Eol, Match };
    struct Inst {
        Op op;
        int x = 0;
        int y = 0;
    };

    friend class Compiler;

    std::string source_;
    bool ignore_case_ = false;
    std::vector<CharSet> sets_;
    std::vector<Inst> program_;
};

} // namespace procevo::regex

#endif
