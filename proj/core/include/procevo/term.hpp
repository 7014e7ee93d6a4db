#ifndef PROCEVO_TERM_HPP
#define PROCEVO_TERM_HPP

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <variant>

namespace procevo {

/// An IRI reference. Never empty; never contains whitespace, control
/// characters, or the delimiters `<`, `>`, `"`.
class Iri {
public:
    explicit Iri(std::string value);

    const std::string& str() const noexcept { return value_; }

    friend bool operator==(const Iri&, const Iri&) = default;
    friend std::strong_ordering operator<=>(const Iri& a, const Iri& b) noexcept {
        return a.value_.compare(b.value_) <=> 0;
    }

    static bool is_valid(std::string_view text) noexcept;

private:
    std::string value_;
};

/// A plain literal: Unicode text (stored in NFC) with an optional language tag.
class Literal {
public:
    explicit Literal(std::string_view lexical, std::string language = {});

    const std::string& lexical() const noexcept { return lexical_; }
    const std::string& language() const noexcept { return language_; }
    bool has_language() const noexcept { return !language_.empty(); }

    friend bool operator==(const Literal&, const Literal&) = default;
    friend std::strong_ordering operator<=>(const Literal& a, const Literal& b) noexcept {
        if (auto c = a.lexical_.compare(b.lexical_) <=> 0; c != 0) return c;
        return a.language_.compare(b.language_) <=> 0;
    }

    static bool is_valid_language_tag(std::string_view tag) noexcept;

private:
    std::string lexical_;
    std::string language_;
};

/// Object position of a statement. IRIs order before literals.
using Term = std::variant<Iri, Literal>;

inline bool is_iri(const Term& t) noexcept { return std::holds_alternative<Iri>(t); }
inline bool is_literal(const Term& t) noexcept { return std::holds_alternative<Literal>(t); }

/// N-Triples style rendering of a single term (`<iri>` or `"text"@lang`).
std::string to_string(const Term& term);
std::string to_string(const Iri& iri);
std::string to_string(const Literal& literal);

struct Statement {
    Iri subject;
    Iri predicate;
    Term object;

    friend bool operator==(const Statement&, const Statement&) = default;
    friend std::strong_ordering operator<=>(const Statement& a, const Statement& b) noexcept {
        if (auto c = a.subject <=> b.subject; c != 0) return c;
        if (auto c = a.predicate <=> b.predicate; c != 0) return c;
        return a.object <=> b.object;
    }
};

} // namespace procevo

template <>
struct std::hash<procevo::Iri> {
    std::size_t operator()(const procevo::Iri& iri) const noexcept {
        return std::hash<std::string>{}(iri.str());
    }
};

template <>
struct std::hash<procevo::Literal> {
    std::size_t operator()(const procevo::Literal& lit) const noexcept {
        return std::hash<std::string>{}(lit.lexical()) * 31 + std::hash<std::string>{}(lit.language());
    }
};

template <>
struct std::hash<procevo::Term> {
    std::size_t operator()(const procevo::Term& term) const noexcept {
        return std::visit([](const auto& t) { return std::hash<std::decay_t<decltype(t)>>{}(t); }, term) ^
               term.index();
    }
};

template <>
struct std::hash<procevo::Statement> {
    std::size_t operator()(const procevo::Statement& s) const noexcept {
        std::size_t h = std::hash<procevo::Iri>{}(s.subject);
        h = h * 1000003u ^ std::hash<procevo::Iri>{}(s.predicate);
        return h * 1000003u ^ std::hash<procevo::Term>{}(s.object);
    }
};

#endif
