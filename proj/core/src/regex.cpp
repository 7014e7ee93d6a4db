#include "procevo/regex.hpp"

#include "procevo/error.hpp"
#include "procevo/unicode.hpp"

#include <memory>

namespace procevo::regex {

bool Pattern::CharSet::matches(char32_t c, char32_t alt) const noexcept {
    bool hit = false;
    for (const auto& [lo, hi] : ranges) {
        if ((c >= lo && c <= hi) || (alt >= lo && alt <= hi)) {
            hit = true;
            break;
        }
    }
    return hit != negated;
}

namespace {

constexpr int kMaxRepeat = 1000;

struct Node {
    enum class Kind { Empty, Set, Concat, Alt, Repeat, Bol, Eol } kind = Kind::Empty;
    int set = -1;
    int min = 0;
    int max = 0; // -1 = unbounded
    std::vector<std::unique_ptr<Node>> children;
};

using NodePtr = std::unique_ptr<Node>;

NodePtr make(Node::Kind kind) {
    auto n = std::make_unique<Node>();
    n->kind = kind;
    return n;
}

} // namespace

class Compiler {
public:
    Compiler(std::u32string pattern, Pattern& out) : pattern_(std::move(pattern)), out_(out) {}

    void run() {
        NodePtr root = parse_alternation();
        if (pos_ != pattern_.size()) fail("unbalanced ')'");
        emit(*root);
        out_.program_.push_back({Pattern::Op::Match});
    }

private:
    using Op = Pattern::Op;
    using CharSet = Pattern::CharSet;

    [[noreturn]] void fail(const std::string& message) const {
        throw MalformedQuery("regex /" + out_.source_ + "/: " + message + " at offset " + std::to_string(pos_));
    }

    bool at_end() const { return pos_ >= pattern_.size(); }
    char32_t peek() const { return pattern_[pos_]; }

    int add_set(CharSet set) {
        out_.sets_.push_back(std::move(set));
        return static_cast<int>(out_.sets_.size() - 1);
    }

    NodePtr set_node(CharSet set) {
        NodePtr n = make(Node::Kind::Set);
        n->set = add_set(std::move(set));
        return n;
    }

    static void add_class_ranges(char32_t letter, CharSet& set) {
        switch (letter) {
        case 'd': set.ranges.push_back({'0', '9'}); break;
        case 'w':
            set.ranges.push_back({'0', '9'});
            set.ranges.push_back({'A', 'Z'});
            set.ranges.push_back({'_', '_'});
            set.ranges.push_back({'a', 'z'});
            break;
        case 's':
            set.ranges.push_back({' ', ' '});
            set.ranges.push_back({'\t', '\r'});
            break;
        }
    }

    // After a backslash: either a single code point or a shorthand class.
    CharSet read_escape() {
        if (at_end()) fail("trailing backslash");
        const char32_t c = pattern_[pos_++];
        CharSet set;
        switch (c) {
        case 'd':
        case 'w':
        case 's': add_class_ranges(c, set); return set;
        case 'D':
        case 'W':
        case 'S':
            add_class_ranges(c - 'A' + 'a', set);
            set.negated = true;
            return set;
        case 'n': set.ranges.push_back({'\n', '\n'}); return set;
        case 't': set.ranges.push_back({'\t', '\t'}); return set;
        case 'r': set.ranges.push_back({'\r', '\r'}); return set;
        default:
            if (c < 0x80 && ((c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z')))
                fail("unsupported escape");
            set.ranges.push_back({c, c});
            return set;
        }
    }

    NodePtr parse_alternation() {
        NodePtr left = parse_concat();
        while (!at_end() && peek() == '|') {
            ++pos_;
            NodePtr alt = make(Node::Kind::Alt);
            alt->children.push_back(std::move(left));
            alt->children.push_back(parse_concat());
            left = std::move(alt);
        }
        return left;
    }

    NodePtr parse_concat() {
        NodePtr concat = make(Node::Kind::Concat);
        while (!at_end() && peek() != '|' && peek() != ')') concat->children.push_back(parse_repeat());
        return concat;
    }

    int read_int() {
        const std::size_t start = pos_;
        long value = 0;
        while (!at_end() && peek() >= '0' && peek() <= '9') {
            value = value * 10 + (peek() - '0');
            if (value > kMaxRepeat) fail("repetition bound too large");
            ++pos_;
        }
        if (pos_ == start) fail("expected a number in repetition bounds");
        return static_cast<int>(value);
    }

    NodePtr parse_repeat() {
        NodePtr atom = parse_atom();
        while (!at_end()) {
            int min, max;
            const char32_t c = peek();
            if (c == '*') {
                min = 0, max = -1;
                ++pos_;
            } else if (c == '+') {
                min = 1, max = -1;
                ++pos_;
            } else if (c == '?') {
                min = 0, max = 1;
                ++pos_;
            } else if (c == '{') {
                ++pos_;
                min = read_int();
                max = min;
                if (!at_end() && peek() == ',') {
                    ++pos_;
                    max = (!at_end() && peek() == '}') ? -1 : read_int();
                }
                if (at_end() || peek() != '}') fail("unterminated repetition bounds");
                ++pos_;
                if (max != -1 && max < min) fail("repetition bounds out of order");
            } else {
                break;
            }
            if (atom->kind == Node::Kind::Bol || atom->kind == Node::Kind::Eol) fail("quantified anchor");
            NodePtr rep = make(Node::Kind::Repeat);
            rep->min = min;
            rep->max = max;
            rep->children.push_back(std::move(atom));
            atom = std::move(rep);
        }
        return atom;
    }

    NodePtr parse_class() {
        CharSet set;
        if (!at_end() && peek() == '^') {
            set.negated = true;
            ++pos_;
        }
        bool first = true;
        for (;;) {
            if (at_end()) fail("unterminated character class");
            char32_t c = peek();
            if (c == ']' && !first) {
                ++pos_;
                break;
            }
            first = false;
            ++pos_;
            char32_t lo = c;
            if (c == '\\') {
                CharSet escaped = read_escape();
                if (escaped.negated || escaped.ranges.size() != 1 || escaped.ranges[0].first != escaped.ranges[0].second) {
                    if (escaped.negated) fail("negated shorthand inside a class");
                    set.ranges.insert(set.ranges.end(), escaped.ranges.begin(), escaped.ranges.end());
                    continue;
                }
                lo = escaped.ranges[0].first;
            }
            char32_t hi = lo;
            if (pos_ + 1 < pattern_.size() && peek() == '-' && pattern_[pos_ + 1] != ']') {
                ++pos_;
                hi = pattern_[pos_++];
                if (hi == '\\') {
                    CharSet escaped = read_escape();
                    if (escaped.negated || escaped.ranges.size() != 1) fail("class shorthand as range bound");
                    hi = escaped.ranges[0].first;
                }
                if (hi < lo) fail("character range out of order");
            }
            set.ranges.push_back({lo, hi});
        }
        return set_node(std::move(set));
    }

    NodePtr parse_atom() {
        const char32_t c = pattern_[pos_++];
        switch (c) {
        case '(': {
            NodePtr inner = parse_alternation();
            if (at_end() || peek() != ')') fail("missing ')'");
            ++pos_;
            return inner;
        }
        case '[': return parse_class();
        case '.': {
            CharSet set;
            set.negated = true;
            set.ranges.push_back({'\n', '\n'});
            set.ranges.push_back({'\r', '\r'});
            return set_node(std::move(set));
        }
        case '^': return make(Node::Kind::Bol);
        case '$': return make(Node::Kind::Eol);
        case '\\': return set_node(read_escape());
        case '*':
        case '+':
        case '?':
        case '{': --pos_; fail("quantifier without operand");
        case ')': --pos_; fail("unbalanced ')'");
        default: {
            CharSet set;
            set.ranges.push_back({c, c});
            return set_node(std::move(set));
        }
        }
    }

    int here() const { return static_cast<int>(out_.program_.size()); }
    int push(Op op, int x = 0, int y = 0) {
        out_.program_.push_back({op, x, y});
        return here() - 1;
    }

    void emit(const Node& n) {
        switch (n.kind) {
        case Node::Kind::Empty: break;
        case Node::Kind::Set: push(Op::Set, n.set); break;
        case Node::Kind::Bol: push(Op::Bol); break;
        case Node::Kind::Eol: push(Op::Eol); break;
        case Node::Kind::Concat:
            for (const auto& child : n.children) emit(*child);
            break;
        case Node::Kind::Alt: {
            const int split = push(Op::Split);
            out_.program_[split].x = here();
            emit(*n.children[0]);
            const int jump = push(Op::Jmp);
            out_.program_[split].y = here();
            emit(*n.children[1]);
            out_.program_[jump].x = here();
            break;
        }
        case Node::Kind::Repeat: {
            const Node& body = *n.children[0];
            for (int i = 0; i < n.min; ++i) emit(body);
            if (n.max == -1) {
                const int split = push(Op::Split);
                out_.program_[split].x = here();
                emit(body);
                push(Op::Jmp, split);
                out_.program_[split].y = here();
            } else {
                std::vector<int> splits;
                for (int i = n.min; i < n.max; ++i) {
                    const int split = push(Op::Split);
                    out_.program_[split].x = here();
                    splits.push_back(split);
                    emit(body);
                }
                for (int split : splits) out_.program_[split].y = here();
            }
            break;
        }
        }
        if (out_.program_.size() > 200000) fail("pattern too large");
    }

    std::u32string pattern_;
    std::size_t pos_ = 0;
    Pattern& out_;
};

Pattern Pattern::compile(std::string_view pattern, bool ignore_case) {
    Pattern out;
    out.source_ = std::string(pattern);
    out.ignore_case_ = ignore_case;
    if (!unicode::is_valid_utf8(pattern)) throw MalformedQuery("regex is not valid UTF-8");
    Compiler(unicode::decode(pattern), out).run();
    return out;
}

namespace {

class ThreadList {
public:
    explicit ThreadList(std::size_t n) : dense_(n), sparse_(n) {}

    bool contains(int pc) const {
        const std::size_t i = sparse_[pc];
        return i < size_ && dense_[i] == pc;
    }
    void insert(int pc) {
        sparse_[pc] = size_;
        dense_[size_++] = pc;
    }
    void clear() { size_ = 0; }
    std::size_t size() const { return size_; }
    int operator[](std::size_t i) const { return dense_[i]; }

private:
    std::vector<int> dense_;
    std::vector<std::size_t> sparse_;
    std::size_t size_ = 0;
};

char32_t swap_ascii_case(char32_t c) {
    if (c >= 'a' && c <= 'z') return c - 'a' + 'A';
    if (c >= 'A' && c <= 'Z') return c - 'A' + 'a';
    return c;
}

} // namespace

bool Pattern::search(std::string_view text) const {
    const std::u32string input = unicode::decode(text);
    const std::size_t n = program_.size();
    ThreadList current(n);
    ThreadList next(n);
    std::vector<int> stack;

    auto add = [&](ThreadList& list, int start, std::size_t pos) {
        stack.push_back(start);
        while (!stack.empty()) {
            const int pc = stack.back();
            stack.pop_back();
            if (list.contains(pc)) continue;
            list.insert(pc);
            const Inst& inst = program_[pc];
            switch (inst.op) {
            case Op::Jmp: stack.push_back(inst.x); break;
            case Op::Split:
                stack.push_back(inst.y);
                stack.push_back(inst.x);
                break;
            case Op::Bol:
                if (pos == 0) stack.push_back(pc + 1);
                break;
            case Op::Eol:
                if (pos == input.size()) stack.push_back(pc + 1);
                break;
            case Op::Set:
            case Op::Match: break;
            }
        }
    };

    for (std::size_t pos = 0;; ++pos) {
        add(current, 0, pos);
        for (std::size_t i = 0; i < current.size(); ++i)
            if (program_[current[i]].op == Op::Match) return true;
        if (pos == input.size()) return false;
        const char32_t c = input[pos];
        next.clear();
        for (std::size_t i = 0; i < current.size(); ++i) {
            const Inst& inst = program_[current[i]];
            if (inst.op != Op::Set) continue;
            const CharSet& set = sets_[inst.x];
            if (set.matches(c, ignore_case_ ? swap_ascii_case(c) : c)) add(next, current[i] + 1, pos + 1);
        }
        std::swap(current, next);
    }
}

} // namespace procevo::regex
