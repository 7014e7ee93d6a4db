#include "procevo/term.hpp"

#include "procevo/error.hpp"
#include "procevo/unicode.hpp"

#include <cctype>

namespace procevo {

bool Iri::is_valid(std::string_view text) noexcept {
    if (text.empty()) return false;
    for (char ch : text) {
        const auto c = static_cast<unsigned char>(ch);
        if (c <= 0x20 || c == 0x7F || c == '<' || c == '>' || c == '"') return false;
    }
    return unicode::is_valid_utf8(text);
}

Iri::Iri(std::string value) : value_(std::move(value)) {
    if (!is_valid(value_)) throw InvalidTerm("invalid IRI '" + value_ + "'");
}

bool Literal::is_valid_language_tag(std::string_view tag) noexcept {
    // [a-zA-Z]+ ('-' [a-zA-Z0-9]+)*
    if (tag.empty()) return false;
    std::size_t i = 0;
    while (i < tag.size() && std::isalpha(static_cast<unsigned char>(tag[i]))) ++i;
    if (i == 0) return false;
    while (i < tag.size()) {
        if (tag[i] != '-') return false;
        const std::size_t start = ++i;
        while (i < tag.size() && std::isalnum(static_cast<unsigned char>(tag[i]))) ++i;
        if (i == start) return false;
    }
    return true;
}

Literal::Literal(std::string_view lexical, std::string language)
    : lexical_(unicode::to_nfc(lexical)), language_(std::move(language)) {
    if (!language_.empty() && !is_valid_language_tag(language_))
        throw InvalidTerm("invalid language tag '" + language_ + "'");
}

std::string to_string(const Iri& iri) {
    std::string out;
    out.reserve(iri.str().size() + 2);
    out.push_back('<');
    out += iri.str();
    out.push_back('>');
    return out;
}

std::string to_string(const Literal& literal) {
    std::string out;
    out.reserve(literal.lexical().size() + 2 + literal.language().size());
    out.push_back('"');
    for (char c : literal.lexical()) {
        switch (c) {
        case '\\': out += "\\\\"; break;
        case '"': out += "\\\""; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out.push_back(c);
        }
    }
    out.push_back('"');
    if (literal.has_language()) {
        out.push_back('@');
        out += literal.language();
    }
    return out;
}

std::string to_string(const Term& term) {
    return std::visit([](const auto& t) { return to_string(t); }, term);
}

} // namespace procevo
