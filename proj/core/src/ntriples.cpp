#include "procevo/ntriples.hpp"

#include "procevo/error.hpp"

#include <algorithm>

namespace procevo::ntriples {

namespace {

class LineCursor {
public:
    LineCursor(std::string_view line, std::size_t number) : line_(line), number_(number) {}

    void skip_spaces() {
        while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t' || line_[pos_] == '\r')) ++pos_;
    }

    bool at_end() const { return pos_ >= line_.size(); }
    char peek() const { return line_[pos_]; }

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(number_, message); }

    Iri read_iri(const char* what) {
        skip_spaces();
        if (at_end()) fail(std::string("missing ") + what);
        if (peek() != '<') fail(std::string("expected '<' to open ") + what);
        const std::size_t close = line_.find('>', pos_ + 1);
        if (close == std::string_view::npos) fail(std::string("unterminated IRI in ") + what);
        std::string text(line_.substr(pos_ + 1, close - pos_ - 1));
        if (!Iri::is_valid(text)) fail(std::string("invalid IRI in ") + what);
        pos_ = close + 1;
        return Iri(std::move(text));
    }

    Literal read_literal() {
        ++pos_; // opening quote
        std::string text;
        for (;;) {
            if (at_end()) fail("unterminated literal");
            const char c = line_[pos_++];
            if (c == '"') break;
            if (c != '\\') {
                text.push_back(c);
                continue;
            }
            if (at_end()) fail("unterminated escape in literal");
            switch (line_[pos_++]) {
            case '\\': text.push_back('\\'); break;
            case '"': text.push_back('"'); break;
            case 'n': text.push_back('\n'); break;
            case 't': text.push_back('\t'); break;
            case 'r': text.push_back('\r'); break;
            default: fail("unknown escape sequence in literal");
            }
        }
        std::string language;
        if (!at_end() && peek() == '@') {
            const std::size_t start = ++pos_;
            while (!at_end() && peek() != ' ' && peek() != '\t' && peek() != '.') ++pos_;
            language.assign(line_.substr(start, pos_ - start));
            if (!Literal::is_valid_language_tag(language)) fail("invalid language tag");
        }
        try {
            return Literal(text, std::move(language));
        } catch (const InvalidTerm& e) {
            fail(e.what());
        }
    }

    Term read_object() {
        skip_spaces();
        if (at_end()) fail("missing object");
        if (peek() == '"') return read_literal();
        if (peek() == '<') return read_iri("object");
        fail("object must be an IRI or a literal");
    }

    void read_terminator() {
        skip_spaces();
        if (at_end() || peek() != '.') fail("missing terminating '.'");
        ++pos_;
        skip_spaces();
        if (!at_end()) fail("unexpected content after '.'");
    }

private:
    std::string_view line_;
    std::size_t number_;
    std::size_t pos_ = 0;
};

bool is_ignorable(std::string_view line) {
    const std::size_t first = line.find_first_not_of(" \t\r");
    return first == std::string_view::npos || line[first] == '#';
}

} // namespace

std::string statement_line(const Statement& s) {
    std::string line = to_string(s.subject);
    line.push_back(' ');
    line += to_string(s.predicate);
    line.push_back(' ');
    line += to_string(s.object);
    line += " .";
    return line;
}

Statement parse_statement_line(std::string_view line, std::size_t line_number) {
    LineCursor cursor(line, line_number);
    Iri subject = cursor.read_iri("subject");
    if (!cursor.at_end() && cursor.peek() != ' ' && cursor.peek() != '\t') cursor.fail("expected whitespace after subject");
    Iri predicate = cursor.read_iri("predicate");
    Term object = cursor.read_object();
    cursor.read_terminator();
    return Statement{std::move(subject), std::move(predicate), std::move(object)};
}

std::vector<std::string_view> split_lines(std::string_view document) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < document.size()) {
        std::size_t end = document.find('\n', start);
        if (end == std::string_view::npos) end = document.size();
        lines.push_back(document.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

Graph parse_graph(std::string_view document) {
    Graph graph;
    std::size_t number = 0;
    for (std::string_view line : split_lines(document)) {
        ++number;
        if (is_ignorable(line)) continue;
        graph.insert(parse_statement_line(line, number));
    }
    return graph;
}

std::string serialize_graph(const Graph& graph) {
    std::vector<std::string> lines;
    lines.reserve(graph.size());
    std::size_t total = 0;
    for (const Statement& s : graph) {
        lines.push_back(statement_line(s));
        total += lines.back().size() + 1;
    }
    std::sort(lines.begin(), lines.end());
    std::string out;
    out.reserve(total);
    for (const std::string& line : lines) {
        out += line;
        out.push_back('\n');
    }
    return out;
}

} // namespace procevo::ntriples
