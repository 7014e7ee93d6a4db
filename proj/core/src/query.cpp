#include "procevo/query.hpp"

#include "procevo/error.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace procevo::query {

std::string to_string(const PatternTerm& term) {
    if (const auto* v = std::get_if<Variable>(&term)) return "?" + v->name;
    return procevo::to_string(std::get<Term>(term));
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Iri, PName, Var, String, LangTag, Word, Punct, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> tokens;
        for (;;) {
            skip_space_and_comments();
            if (pos_ >= text_.size()) {
                tokens.push_back({Tok::End, "", pos_});
                return tokens;
            }
            tokens.push_back(next());
        }
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw MalformedQuery("query offset " + std::to_string(pos_) + ": " + message);
    }

    void skip_space_and_comments() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    static bool is_name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || static_cast<unsigned char>(c) >= 0x80;
    }

    Token next() {
        const std::size_t start = pos_;
        const char c = text_[pos_];
        if (c == '<') {
            const std::size_t close = text_.find('>', pos_);
            if (close == std::string_view::npos) fail("unterminated IRI");
            std::string iri(text_.substr(pos_ + 1, close - pos_ - 1));
            pos_ = close + 1;
            return {Tok::Iri, std::move(iri), start};
        }
        if (c == '?' || c == '$') {
            ++pos_;
            const std::size_t name_start = pos_;
            while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
            if (pos_ == name_start) fail("empty variable name");
            return {Tok::Var, std::string(text_.substr(name_start, pos_ - name_start)), start};
        }
        if (c == '"') return read_string(start);
        if (c == '@') {
            ++pos_;
            const std::size_t tag_start = pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-'))
                ++pos_;
            return {Tok::LangTag, std::string(text_.substr(tag_start, pos_ - tag_start)), start};
        }
        if (std::string_view("{}().,=*").find(c) != std::string_view::npos) {
            ++pos_;
            return {Tok::Punct, std::string(1, c), start};
        }
        if (is_name_char(c) || c == ':') {
            while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
            if (pos_ < text_.size() && text_[pos_] == ':') {
                ++pos_;
                while (pos_ < text_.size() &&
                       (is_name_char(text_[pos_]) || text_[pos_] == '/' || text_[pos_] == '#' ||
                        (text_[pos_] == '.' && pos_ + 1 < text_.size() && is_name_char(text_[pos_ + 1]))))
                    ++pos_;
                return {Tok::PName, std::string(text_.substr(start, pos_ - start)), start};
            }
            return {Tok::Word, std::string(text_.substr(start, pos_ - start)), start};
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    Token read_string(std::size_t start) {
        ++pos_;
        std::string out;
        for (;;) {
            if (pos_ >= text_.size()) fail("unterminated string");
            const char c = text_[pos_++];
            if (c == '"') break;
            if (c != '\\') {
                out.push_back(c);
                continue;
            }
            if (pos_ >= text_.size()) fail("unterminated escape");
            switch (text_[pos_++]) {
            case '"': out.push_back('"'); break;
            case '\\': out.push_back('\\'); break;
            case 'n': out.push_back('\n'); break;
            case 't': out.push_back('\t'); break;
            case 'r': out.push_back('\r'); break;
            default: fail("unknown string escape");
            }
        }
        return {Tok::String, std::move(out), start};
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

bool keyword_is(const Token& t, std::string_view word) {
    if (t.kind != Tok::Word || t.text.size() != word.size()) return false;
    for (std::size_t i = 0; i < word.size(); ++i)
        if (std::toupper(static_cast<unsigned char>(t.text[i])) != word[i]) return false;
    return true;
}

class Parser {
public:
    Parser(std::vector<Token> tokens, std::map<std::string, std::string> prefixes)
        : tokens_(std::move(tokens)), prefixes_(std::move(prefixes)) {}

    Query run() {
        while (keyword_is(peek(), "PREFIX")) parse_prefix();
        if (!keyword_is(peek(), "SELECT")) fail("expected SELECT");
        ++pos_;
        Query q;
        if (keyword_is(peek(), "DISTINCT")) {
            q.distinct = true;
            ++pos_;
        }
        bool select_all = false;
        if (is_punct("*")) {
            select_all = true;
            ++pos_;
        } else {
            while (peek().kind == Tok::Var) q.select.push_back(Variable{tokens_[pos_++].text});
            if (q.select.empty()) fail("SELECT needs variables or '*'");
        }
        if (keyword_is(peek(), "WHERE")) ++pos_;
        expect_punct("{");
        parse_body(q);
        expect_punct("}");
        if (peek().kind != Tok::End) fail("unexpected content after '}'");
        if (select_all) {
            for (const TriplePattern& p : q.patterns)
                for (const PatternTerm* t : {&p.subject, &p.predicate, &p.object})
                    if (const auto* v = std::get_if<Variable>(t);
                        v && std::find(q.select.begin(), q.select.end(), *v) == q.select.end())
                        q.select.push_back(*v);
        }
        return q;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    bool is_punct(std::string_view p) const { return peek().kind == Tok::Punct && peek().text == p; }

    [[noreturn]] void fail(const std::string& message) const {
        throw MalformedQuery("query offset " + std::to_string(peek().offset) + ": " + message);
    }

    void expect_punct(std::string_view p) {
        if (!is_punct(p)) fail("expected '" + std::string(p) + "'");
        ++pos_;
    }

    void parse_prefix() {
        ++pos_;
        const Token& name = peek();
        if (name.kind != Tok::PName || name.text.back() != ':') fail("expected 'name:' after PREFIX");
        const std::string prefix = name.text.substr(0, name.text.size() - 1);
        ++pos_;
        if (peek().kind != Tok::Iri) fail("expected <namespace> after PREFIX name");
        prefixes_[prefix] = tokens_[pos_++].text;
    }

    Iri make_iri(const std::string& text) const {
        if (!Iri::is_valid(text)) fail("invalid IRI '" + text + "'");
        return Iri(text);
    }

    Term parse_concrete() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Iri: ++pos_; return make_iri(t.text);
        case Tok::PName: {
            const std::size_t colon = t.text.find(':');
            const auto it = prefixes_.find(t.text.substr(0, colon));
            if (it == prefixes_.end()) fail("undeclared prefix '" + t.text.substr(0, colon) + "'");
            ++pos_;
            return make_iri(it->second + t.text.substr(colon + 1));
        }
        case Tok::String: {
            std::string lexical = t.text;
            ++pos_;
            std::string language;
            if (peek().kind == Tok::LangTag) language = tokens_[pos_++].text;
            try {
                return Literal(lexical, std::move(language));
            } catch (const InvalidTerm& e) {
                fail(e.what());
            }
        }
        default: fail("expected a term");
        }
    }

    PatternTerm parse_term() {
        if (peek().kind == Tok::Var) return Variable{tokens_[pos_++].text};
        return parse_concrete();
    }

    Variable parse_variable() {
        if (peek().kind != Tok::Var) fail("expected a variable");
        return Variable{tokens_[pos_++].text};
    }

    void parse_filter(Query& q) {
        ++pos_;
        expect_punct("(");
        if (keyword_is(peek(), "REGEX")) {
            ++pos_;
            expect_punct("(");
            Variable var = parse_variable();
            expect_punct(",");
            if (peek().kind != Tok::String) fail("regex pattern must be a string");
            const std::string pattern = tokens_[pos_++].text;
            bool ignore_case = false;
            if (is_punct(",")) {
                ++pos_;
                if (peek().kind != Tok::String) fail("regex flags must be a string");
                const std::string flags = tokens_[pos_++].text;
                if (flags != "i" && !flags.empty()) fail("unsupported regex flags '" + flags + "'");
                ignore_case = flags == "i";
            }
            expect_punct(")");
            q.filters.emplace_back(RegexFilter{std::move(var), regex::Pattern::compile(pattern, ignore_case)});
        } else {
            Variable var = parse_variable();
            expect_punct("=");
            q.filters.emplace_back(EqualsFilter{std::move(var), parse_concrete()});
        }
        expect_punct(")");
    }

    void parse_body(Query& q) {
        while (!is_punct("}")) {
            if (peek().kind == Tok::End) fail("missing '}'");
            if (keyword_is(peek(), "FILTER")) {
                parse_filter(q);
            } else {
                TriplePattern p{parse_term(), parse_term(), parse_term(), std::nullopt};
                if (keyword_is(peek(), "COMMON")) {
                    p.label = VersionLabel::Common;
                } else if (keyword_is(peek(), "ONLYBASE")) {
                    p.label = VersionLabel::OnlyBase;
                } else if (keyword_is(peek(), "ONLYTARGET")) {
                    p.label = VersionLabel::OnlyTarget;
                }
                if (p.label) ++pos_;
                q.patterns.push_back(std::move(p));
            }
            if (is_punct(".")) ++pos_;
        }
    }

    std::vector<Token> tokens_;
    std::map<std::string, std::string> prefixes_;
    std::size_t pos_ = 0;
};

} // namespace

Query parse(std::string_view text, const std::map<std::string, std::string>& prefixes) {
    Query q = Parser(Lexer(text).run(), prefixes).run();
    validate(q);
    return q;
}

void validate(const Query& query) {
    std::vector<Variable> bound;
    for (const TriplePattern& p : query.patterns) {
        if (const auto* t = std::get_if<Term>(&p.subject); t && !is_iri(*t))
            throw MalformedQuery("pattern subject must be an IRI or a variable");
        if (const auto* t = std::get_if<Term>(&p.predicate); t && !is_iri(*t))
            throw MalformedQuery("pattern predicate must be an IRI or a variable");
        for (const PatternTerm* t : {&p.subject, &p.predicate, &p.object})
            if (const auto* v = std::get_if<Variable>(t)) bound.push_back(*v);
    }
    auto known = [&](const Variable& v) { return std::find(bound.begin(), bound.end(), v) != bound.end(); };
    for (const Variable& v : query.select)
        if (!known(v)) throw MalformedQuery("selected variable ?" + v.name + " occurs in no pattern");
    for (const Filter& f : query.filters) {
        const Variable& v = std::visit([](const auto& x) -> const Variable& { return x.variable; }, f);
        if (!known(v)) throw MalformedQuery("filter variable ?" + v.name + " occurs in no pattern");
    }
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct Row {
    int s, p, o;
    VersionLabel label;
};

class Dataset {
public:
    explicit Dataset(const Graph& graph) : labeled_(false) { add(graph, VersionLabel::Common); }

    explicit Dataset(const ComparisonModel& cm) : labeled_(true) {
        for (VersionLabel label : {VersionLabel::Common, VersionLabel::OnlyBase, VersionLabel::OnlyTarget})
            add(cm.with_label(label), label);
    }

    bool labeled() const { return labeled_; }
    const std::vector<Row>& rows() const { return rows_; }
    const Term& term(int id) const { return terms_[static_cast<std::size_t>(id)]; }

    int find(const Term& t) const {
        const auto it = ids_.find(t);
        return it == ids_.end() ? -1 : it->second;
    }

    /// Row indices whose `position` (0=s,1=p,2=o) holds `id`.
    const std::vector<int>& postings(int position, int id) const {
        static const std::vector<int> kEmpty;
        const auto& index = index_[position];
        const auto it = index.find(id);
        return it == index.end() ? kEmpty : it->second;
    }

private:
    int intern(const Term& t) {
        const auto [it, inserted] = ids_.emplace(t, static_cast<int>(terms_.size()));
        if (inserted) terms_.push_back(t);
        return it->second;
    }

    void add(const Graph& graph, VersionLabel label) {
        for (const Statement& st : graph) {
            const Row row{intern(st.subject), intern(st.predicate), intern(st.object), label};
            const int index = static_cast<int>(rows_.size());
            rows_.push_back(row);
            index_[0][row.s].push_back(index);
            index_[1][row.p].push_back(index);
            index_[2][row.o].push_back(index);
        }
    }

    bool labeled_;
    std::vector<Term> terms_;
    std::unordered_map<Term, int> ids_;
    std::vector<Row> rows_;
    std::unordered_map<int, std::vector<int>> index_[3];
};

// A pattern position: a constant term id (-1 when absent from the data, so
// nothing can match) or a variable slot.
struct Slot {
    bool is_var = false;
    int value = -1;
};

struct CompiledPattern {
    Slot pos[3];
    std::optional<VersionLabel> label;
    bool impossible = false;
    std::size_t source_index = 0;
};

struct CompiledFilter {
    int slot;
    const Filter* filter;
};

struct Plan {
    std::vector<std::string> variable_names;
    std::vector<CompiledPattern> steps;                // in join order
    std::vector<std::vector<CompiledFilter>> filters;  // checked after step i
    std::vector<int> select_slots;
};

Plan make_plan(const Dataset& data, const Query& query) {
    validate(query);
    if (!data.labeled())
        for (const TriplePattern& p : query.patterns)
            if (p.label) throw LabelConstraintOnPlainGraph("label constraints need a comparison model");

    Plan plan;
    std::map<std::string, int> slots;
    auto slot_of = [&](const std::string& name) {
        const auto [it, inserted] = slots.emplace(name, static_cast<int>(plan.variable_names.size()));
        if (inserted) plan.variable_names.push_back(name);
        return it->second;
    };

    std::vector<CompiledPattern> patterns;
    for (std::size_t i = 0; i < query.patterns.size(); ++i) {
        const TriplePattern& p = query.patterns[i];
        CompiledPattern cp;
        cp.label = p.label;
        cp.source_index = i;
        const PatternTerm* terms[3] = {&p.subject, &p.predicate, &p.object};
        for (int k = 0; k < 3; ++k) {
            if (const auto* v = std::get_if<Variable>(terms[k])) {
                cp.pos[k] = {true, slot_of(v->name)};
            } else {
                cp.pos[k] = {false, data.find(std::get<Term>(*terms[k]))};
                if (cp.pos[k].value < 0) cp.impossible = true;
            }
        }
        patterns.push_back(cp);
    }

    // Greedy join order: next is the pattern with the most positions bound by
    // constants or earlier patterns; ties keep the written order.
    std::vector<bool> bound(plan.variable_names.size(), false);
    std::vector<bool> used(patterns.size(), false);
    for (std::size_t step = 0; step < patterns.size(); ++step) {
        int best = -1;
        int best_score = -1;
        for (std::size_t i = 0; i < patterns.size(); ++i) {
            if (used[i]) continue;
            int score = 0;
            for (const Slot& s : patterns[i].pos)
                if (!s.is_var || bound[static_cast<std::size_t>(s.value)]) ++score;
            if (score > best_score) {
                best_score = score;
                best = static_cast<int>(i);
            }
        }
        used[static_cast<std::size_t>(best)] = true;
        for (const Slot& s : patterns[static_cast<std::size_t>(best)].pos)
            if (s.is_var) bound[static_cast<std::size_t>(s.value)] = true;
        plan.steps.push_back(patterns[static_cast<std::size_t>(best)]);
    }

    plan.filters.resize(plan.steps.size());
    for (const Filter& f : query.filters) {
        const Variable& v = std::visit([](const auto& x) -> const Variable& { return x.variable; }, f);
        const int slot = slots.at(v.name);
        for (std::size_t step = 0; step < plan.steps.size(); ++step) {
            const auto& pos = plan.steps[step].pos;
            if (std::any_of(std::begin(pos), std::end(pos), [&](const Slot& s) { return s.is_var && s.value == slot; })) {
                plan.filters[step].push_back({slot, &f});
                break;
            }
        }
    }
    for (const Variable& v : query.select) plan.select_slots.push_back(slots.at(v.name));
    return plan;
}

bool filter_holds(const Filter& filter, const Term& value) {
    if (const auto* eq = std::get_if<EqualsFilter>(&filter)) return eq->value == value;
    const auto& rx = std::get<RegexFilter>(filter);
    const auto* lit = std::get_if<Literal>(&value);
    return lit != nullptr && rx.pattern.search(lit->lexical());
}

class Executor {
public:
    Executor(const Dataset& data, const Plan& plan)
        : data_(data), plan_(plan), binding_(plan.variable_names.size(), -1) {}

    std::vector<std::vector<int>> run() {
        for (const CompiledPattern& p : plan_.steps)
            if (p.impossible) return {};
        descend(0);
        return std::move(results_);
    }

private:
    const std::vector<int>* candidates(const CompiledPattern& p) const {
        const std::vector<int>* best = nullptr;
        for (int k = 0; k < 3; ++k) {
            const Slot& s = p.pos[k];
            const int id = s.is_var ? binding_[static_cast<std::size_t>(s.value)] : s.value;
            if (id < 0) continue;
            const std::vector<int>& list = data_.postings(k, id);
            if (best == nullptr || list.size() < best->size()) best = &list;
        }
        return best;
    }

    bool try_bind(const CompiledPattern& p, const Row& row, std::vector<int>& newly_bound) {
        const int values[3] = {row.s, row.p, row.o};
        for (int k = 0; k < 3; ++k) {
            const Slot& s = p.pos[k];
            if (!s.is_var) {
                if (s.value != values[k]) return false;
                continue;
            }
            int& b = binding_[static_cast<std::size_t>(s.value)];
            if (b < 0) {
                b = values[k];
                newly_bound.push_back(s.value);
            } else if (b != values[k]) {
                return false;
            }
        }
        return true;
    }

    void visit_row(std::size_t step, const Row& row) {
        const CompiledPattern& p = plan_.steps[step];
        if (p.label && row.label != *p.label) return;
        std::vector<int> newly_bound;
        if (try_bind(p, row, newly_bound)) {
            const bool pass = std::all_of(plan_.filters[step].begin(), plan_.filters[step].end(), [&](const CompiledFilter& f) {
                return filter_holds(*f.filter, data_.term(binding_[static_cast<std::size_t>(f.slot)]));
            });
            if (pass) descend(step + 1);
        }
        for (int slot : newly_bound) binding_[static_cast<std::size_t>(slot)] = -1;
    }

    void descend(std::size_t step) {
        if (step == plan_.steps.size()) {
            std::vector<int> row;
            row.reserve(plan_.select_slots.size());
            for (int slot : plan_.select_slots) row.push_back(binding_[static_cast<std::size_t>(slot)]);
            results_.push_back(std::move(row));
            return;
        }
        const std::vector<int>* list = candidates(plan_.steps[step]);
        if (list == nullptr) {
            for (const Row& row : data_.rows()) visit_row(step, row);
        } else {
            for (int index : *list) visit_row(step, data_.rows()[static_cast<std::size_t>(index)]);
        }
    }

    const Dataset& data_;
    const Plan& plan_;
    std::vector<int> binding_;
    std::vector<std::vector<int>> results_;
};

std::vector<Solution> run_query(const Dataset& data, const Query& query) {
    const Plan plan = make_plan(data, query);
    const auto rows = Executor(data, plan).run();

    std::vector<std::pair<std::vector<std::string>, const std::vector<int>*>> keyed;
    keyed.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<std::string> key;
        key.reserve(row.size());
        for (int id : row) key.push_back(procevo::to_string(data.term(id)));
        keyed.emplace_back(std::move(key), &row);
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    if (query.distinct)
        keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
                    keyed.end());

    std::vector<Solution> solutions;
    solutions.reserve(keyed.size());
    for (const auto& [key, row] : keyed) {
        Solution s;
        for (std::size_t i = 0; i < query.select.size(); ++i) s.emplace(query.select[i].name, data.term((*row)[i]));
        solutions.push_back(std::move(s));
    }
    return solutions;
}

std::string explain_plan(const Dataset& data, const Query& query) {
    const Plan plan = make_plan(data, query);
    std::string out;
    std::vector<bool> bound(plan.variable_names.size(), false);
    static constexpr const char* kPositions[3] = {"subject", "predicate", "object"};
    for (std::size_t step = 0; step < plan.steps.size(); ++step) {
        const CompiledPattern& p = plan.steps[step];
        const TriplePattern& source = query.patterns[p.source_index];
        out += std::to_string(step + 1) + ". " + to_string(source.subject) + " " + to_string(source.predicate) + " " +
               to_string(source.object);
        if (p.label) out += " " + std::string(procevo::to_string(*p.label));
        // The executor takes the shortest posting list among all bound
        // positions; join positions are only known per row.
        std::string access;
        std::size_t estimate = data.rows().size();
        int bound_count = 0;
        std::string constant_index;
        std::vector<std::string> joins;
        for (int k = 0; k < 3; ++k) {
            const Slot& s = p.pos[k];
            if (s.is_var && !bound[static_cast<std::size_t>(s.value)]) continue;
            ++bound_count;
            if (!s.is_var) {
                const std::size_t n = s.value < 0 ? 0 : data.postings(k, s.value).size();
                if (constant_index.empty() || n < estimate) {
                    estimate = n;
                    constant_index = std::string(kPositions[k]) + " index";
                }
            } else {
                joins.push_back(std::string(kPositions[k]) + " index (join)");
            }
        }
        if (!constant_index.empty()) joins.insert(joins.begin(), constant_index);
        for (std::size_t i = 0; i < joins.size(); ++i) access += (i == 0 ? "" : " | ") + joins[i];
        if (access.empty()) access = "full scan";
        out += "  [bound=" + std::to_string(bound_count) + ", access=" + access + ", rows<=" + std::to_string(estimate) + "]";
        if (!plan.filters[step].empty()) out += " filters=" + std::to_string(plan.filters[step].size());
        out += "\n";
        for (const Slot& s : p.pos)
            if (s.is_var) bound[static_cast<std::size_t>(s.value)] = true;
    }
    return out;
}

} // namespace

std::vector<Solution> evaluate(const Graph& graph, const Query& query) { return run_query(Dataset(graph), query); }

std::vector<Solution> evaluate(const ComparisonModel& model, const Query& query) {
    return run_query(Dataset(model), query);
}

std::string explain(const Graph& graph, const Query& query) { return explain_plan(Dataset(graph), query); }

std::string explain(const ComparisonModel& model, const Query& query) { return explain_plan(Dataset(model), query); }

std::string format_table(const Query& query, const std::vector<Solution>& solutions) {
    std::string out;
    for (std::size_t i = 0; i < query.select.size(); ++i) {
        if (i > 0) out.push_back('\t');
        out += "?" + query.select[i].name;
    }
    out.push_back('\n');
    for (const Solution& s : solutions) {
        for (std::size_t i = 0; i < query.select.size(); ++i) {
            if (i > 0) out.push_back('\t');
            out += procevo::to_string(s.at(query.select[i].name));
        }
        out.push_back('\n');
    }
    return out;
}

} // namespace procevo::query
