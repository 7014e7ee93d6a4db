#include "procevo/change_record.hpp"

#include "procevo/csv.hpp"
#include "procevo/error.hpp"
#include "procevo/ntriples.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>

namespace procevo {

std::string_view to_string(ChangeKind kind) noexcept {
    switch (kind) {
    case ChangeKind::EntityAdded: return "EntityAdded";
    case ChangeKind::EntityDeleted: return "EntityDeleted";
    case ChangeKind::RelationAdded: return "RelationAdded";
    case ChangeKind::RelationDeleted: return "RelationDeleted";
    case ChangeKind::TextPropertyChanged: return "TextPropertyChanged";
    }
    return "?";
}

std::optional<ChangeKind> parse_change_kind(std::string_view name) noexcept {
    for (ChangeKind kind : kAllChangeKinds)
        if (to_string(kind) == name) return kind;
    return std::nullopt;
}

std::string validate(const ChangeRecord& r) {
    if (r.from_version >= r.to_version) return "from version must precede to version";
    switch (r.kind) {
    case ChangeKind::EntityAdded:
    case ChangeKind::EntityDeleted:
        if (r.property || r.related_entity) return "entity change must not carry property or related entity";
        if (!r.old_values.empty() || !r.new_values.empty()) return "entity change must not carry values";
        if (r.entailed) return "entity change cannot be entailed";
        break;
    case ChangeKind::RelationAdded:
    case ChangeKind::RelationDeleted:
        if (!r.property || !r.related_entity) return "relation change needs property and related entity";
        if (!r.old_values.empty() || !r.new_values.empty()) return "relation change must not carry values";
        break;
    case ChangeKind::TextPropertyChanged:
        if (!r.property) return "text change needs a property";
        if (r.related_entity) return "text change must not carry a related entity";
        if (r.old_values.empty() && r.new_values.empty()) return "text change needs old or new values";
        if (r.old_values == r.new_values) return "text change with identical old and new values";
        if (r.entailed) return "text change cannot be entailed";
        break;
    }
    return {};
}

namespace change_vocab {

Iri term(std::string_view local) { return Iri(std::string(kNamespace) + std::string(local)); }

} // namespace change_vocab

namespace {

constexpr char kSep = '\x1f';

std::uint64_t fnv1a(std::string_view data, std::uint64_t hash) {
    for (char c : data) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string canonical_fields(const ChangeRecord& r) {
    std::string s(to_string(r.kind));
    s += kSep + std::to_string(r.from_version) + kSep + std::to_string(r.to_version) + kSep + r.entity.str() + kSep;
    if (r.property) s += r.property->str();
    s += kSep;
    if (r.related_entity) s += r.related_entity->str();
    s += kSep;
    for (const Literal& v : r.old_values) s += to_string(v) + kSep;
    s += kSep;
    for (const Literal& v : r.new_values) s += to_string(v) + kSep;
    s += r.entailed ? "1" : "0";
    return s;
}

struct Vocab {
    Iri kind = change_vocab::term("kind");
    Iri from = change_vocab::term("fromVersion");
    Iri to = change_vocab::term("toVersion");
    Iri entity = change_vocab::term("entity");
    Iri property = change_vocab::term("property");
    Iri related = change_vocab::term("relatedEntity");
    Iri old_value = change_vocab::term("oldValue");
    Iri new_value = change_vocab::term("newValue");
    Iri entailed = change_vocab::term("entailed");
};

const Vocab& vocab() {
    static const Vocab v;
    return v;
}

} // namespace

Iri change_node_iri(const ChangeRecord& record) {
    const std::string fields = canonical_fields(record);
    // Two differently seeded FNV-1a passes give a 128-bit identifier.
    const std::uint64_t h1 = fnv1a(fields, 0xcbf29ce484222325ULL);
    const std::uint64_t h2 = fnv1a(fields, 0x84222325cbf29ce4ULL);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string iri(change_vocab::kNodePrefix);
    for (std::uint64_t h : {h1, h2})
        for (int shift = 60; shift >= 0; shift -= 4) iri.push_back(kHex[(h >> shift) & 0xF]);
    return Iri(std::move(iri));
}

Graph encode_changes_as_graph(const std::vector<ChangeRecord>& records) {
    const Vocab& v = vocab();
    Graph graph;
    for (const ChangeRecord& r : records) {
        const Iri node = change_node_iri(r);
        graph.insert({node, v.kind, change_vocab::term(to_string(r.kind))});
        graph.insert({node, v.from, Literal(std::to_string(r.from_version))});
        graph.insert({node, v.to, Literal(std::to_string(r.to_version))});
        graph.insert({node, v.entity, r.entity});
        if (r.property) graph.insert({node, v.property, *r.property});
        if (r.related_entity) graph.insert({node, v.related, *r.related_entity});
        for (const Literal& value : r.old_values) graph.insert({node, v.old_value, value});
        for (const Literal& value : r.new_values) graph.insert({node, v.new_value, value});
        if (r.entailed) graph.insert({node, v.entailed, Literal("true")});
    }
    return graph;
}

namespace {

[[noreturn]] void malformed(const Iri& node, const std::string& message) {
    throw MalformedChangeGraph("change node <" + node.str() + ">: " + message);
}

const Iri& expect_iri(const Iri& node, const Term& object, const char* field) {
    if (!is_iri(object)) malformed(node, std::string(field) + " must be an IRI");
    return std::get<Iri>(object);
}

VersionNumber expect_version(const Iri& node, const Term& object, const char* field) {
    if (!is_literal(object)) malformed(node, std::string(field) + " must be a literal");
    const std::string& text = std::get<Literal>(object).lexical();
    VersionNumber value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || text.empty())
        malformed(node, std::string(field) + " is not a version number");
    return value;
}

ChangeRecord decode_node(const Iri& node, std::ranges::subrange<Graph::const_iterator> statements) {
    const Vocab& v = vocab();
    std::optional<ChangeKind> kind;
    std::optional<VersionNumber> from;
    std::optional<VersionNumber> to;
    std::optional<Iri> entity;
    std::optional<Iri> property;
    std::optional<Iri> related;
    std::set<Literal> old_values;
    std::set<Literal> new_values;
    bool entailed = false;

    auto set_once = [&](auto& slot, auto value, const char* field) {
        if (slot) malformed(node, std::string("duplicate ") + field);
        slot = std::move(value);
    };

    for (const Statement& s : statements) {
        const Iri& p = s.predicate;
        if (p == v.kind) {
            const Iri& k = expect_iri(node, s.object, "kind");
            const std::string_view ns = change_vocab::kNamespace;
            const auto parsed = k.str().starts_with(ns) ? parse_change_kind(std::string_view(k.str()).substr(ns.size()))
                                                        : std::nullopt;
            if (!parsed) malformed(node, "unknown change kind <" + k.str() + ">");
            set_once(kind, *parsed, "kind");
        } else if (p == v.from) {
            set_once(from, expect_version(node, s.object, "fromVersion"), "fromVersion");
        } else if (p == v.to) {
            set_once(to, expect_version(node, s.object, "toVersion"), "toVersion");
        } else if (p == v.entity) {
            set_once(entity, expect_iri(node, s.object, "entity"), "entity");
        } else if (p == v.property) {
            set_once(property, expect_iri(node, s.object, "property"), "property");
        } else if (p == v.related) {
            set_once(related, expect_iri(node, s.object, "relatedEntity"), "relatedEntity");
        } else if (p == v.old_value || p == v.new_value) {
            if (!is_literal(s.object)) malformed(node, "value must be a literal");
            (p == v.old_value ? old_values : new_values).insert(std::get<Literal>(s.object));
        } else if (p == v.entailed) {
            if (!is_literal(s.object) || std::get<Literal>(s.object).lexical() != "true")
                malformed(node, "entailed must be the literal \"true\"");
            entailed = true;
        } else {
            malformed(node, "unexpected predicate <" + p.str() + ">");
        }
    }
    if (!kind || !from || !to || !entity) malformed(node, "missing kind, fromVersion, toVersion or entity");

    ChangeRecord record{*from, *to, *kind, *entity, std::move(property), std::move(related),
                        std::move(old_values), std::move(new_values), entailed};
    if (std::string problem = validate(record); !problem.empty()) malformed(node, problem);
    if (change_node_iri(record) != node) malformed(node, "node IRI does not match record fields");
    return record;
}

} // namespace

std::vector<ChangeRecord> decode_changes_from_graph(const Graph& graph) {
    std::vector<ChangeRecord> records;
    auto it = graph.begin();
    while (it != graph.end()) {
        const Iri node = it->subject;
        auto range = graph.with_subject(node);
        records.push_back(decode_node(node, range));
        it = range.end();
    }
    std::sort(records.begin(), records.end());
    return records;
}

namespace {

std::string escape_value(const Literal& value) {
    if (value.lexical().empty() && !value.has_language()) return "\\e";
    std::string out;
    for (char c : value.lexical()) {
        if (c == '\\' || c == '|' || c == '@') out.push_back('\\');
        out.push_back(c);
    }
    if (value.has_language()) out += "@" + value.language();
    return out;
}

std::string join_values(const std::set<Literal>& values) {
    std::string out;
    for (const Literal& v : values) {
        if (!out.empty()) out.push_back('|');
        out += escape_value(v);
    }
    return out;
}

std::set<Literal> split_values(std::string_view field, std::size_t line) {
    std::set<Literal> values;
    if (field.empty()) return values;
    std::string text;
    std::string language;
    bool in_language = false;
    auto flush = [&] {
        try {
            values.insert(Literal(text, language));
        } catch (const InvalidTerm& e) {
            throw ParseError(line, e.what());
        }
        text.clear();
        language.clear();
        in_language = false;
    };
    for (std::size_t i = 0; i < field.size(); ++i) {
        const char c = field[i];
        if (c == '\\' && !in_language) {
            if (++i == field.size()) throw ParseError(line, "dangling escape in value list");
            if (field[i] != 'e') text.push_back(field[i]);
        } else if (c == '|') {
            flush();
        } else if (c == '@' && !in_language) {
            in_language = true;
        } else {
            (in_language ? language : text).push_back(c);
        }
    }
    flush();
    return values;
}

} // namespace

std::string export_changes_csv(const std::vector<ChangeRecord>& records) {
    std::string out(kChangeCsvHeader);
    out.push_back('\n');
    for (const ChangeRecord& r : records) {
        out += csv::row({std::string(to_string(r.kind)), std::to_string(r.from_version), std::to_string(r.to_version),
                         r.entity.str(), r.property ? r.property->str() : "",
                         r.related_entity ? r.related_entity->str() : "", join_values(r.old_values),
                         join_values(r.new_values), r.entailed ? "true" : "false"});
        out.push_back('\n');
    }
    return out;
}

std::vector<ChangeRecord> parse_changes_csv(std::string_view document) {
    const auto rows = csv::parse(document);
    if (rows.empty() || csv::row(rows.front()) != kChangeCsvHeader) throw ParseError(1, "missing change CSV header");
    std::vector<ChangeRecord> records;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& f = rows[i];
        const std::size_t line = i + 1;
        if (f.size() != 9) throw ParseError(line, "expected 9 fields");
        const auto kind = parse_change_kind(f[0]);
        if (!kind) throw ParseError(line, "unknown change kind '" + f[0] + "'");
        auto version = [&](const std::string& text) {
            VersionNumber value = 0;
            const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc{} || end != text.data() + text.size()) throw ParseError(line, "bad version number");
            return value;
        };
        auto optional_iri = [&](const std::string& text) -> std::optional<Iri> {
            if (text.empty()) return std::nullopt;
            if (!Iri::is_valid(text)) throw ParseError(line, "invalid IRI '" + text + "'");
            return Iri(text);
        };
        if (!Iri::is_valid(f[3])) throw ParseError(line, "invalid entity IRI");
        if (f[8] != "true" && f[8] != "false") throw ParseError(line, "entailed must be true or false");
        ChangeRecord r{version(f[1]), version(f[2]), *kind, Iri(f[3]), optional_iri(f[4]), optional_iri(f[5]),
                       split_values(f[6], line), split_values(f[7], line), f[8] == "true"};
        if (std::string problem = validate(r); !problem.empty()) throw ParseError(line, problem);
        records.push_back(std::move(r));
    }
    return records;
}

} // namespace procevo
