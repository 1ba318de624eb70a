#include "hmldist/aut.hpp"

#include <cctype>
#include <charconv>

namespace hmldist {

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line = 1;

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    void advance() {
        if (text[pos] == '\n') ++line;
        ++pos;
    }
    void skip_blanks() {
        while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r'))
            advance();
    }
    void expect(char c) {
        skip_blanks();
        if (eof() || peek() != c)
            throw ParseError(line, std::string("expected '") + c + "'");
        advance();
    }
    std::uint64_t number() {
        skip_blanks();
        std::size_t start = pos;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek())))
            advance();
        if (pos == start) throw ParseError(line, "expected a number");
        std::uint64_t value = 0;
        auto sub = text.substr(start, pos - start);
        auto res = std::from_chars(sub.data(), sub.data() + sub.size(), value);
        if (res.ec != std::errc{})
            throw ParseError(line, "number out of range");
        return value;
    }
    // A label is either quoted (escapes \" and \\ allowed) or a bare token
    // running up to the next ',' or ')'.
    std::string label() {
        skip_blanks();
        if (eof()) throw ParseError(line, "expected a label");
        std::string out;
        if (peek() == '"') {
            advance();
            while (!eof() && peek() != '"') {
                if (peek() == '\\') {
                    advance();
                    if (eof()) break;
                }
                out += peek();
                advance();
            }
            if (eof()) throw ParseError(line, "unterminated quoted label");
            advance();
        } else {
            while (!eof() && peek() != ',' && peek() != ')' && peek() != '\n')
                out += text[pos], advance();
            while (!out.empty() && (out.back() == ' ' || out.back() == '\t'))
                out.pop_back();
        }
        if (out.empty()) throw ParseError(line, "empty label");
        return out;
    }
    void end_of_line() {
        skip_blanks();
        if (eof()) return;
        if (peek() != '\n')
            throw ParseError(line, "trailing characters on line");
        advance();
    }
    void skip_empty_lines() {
        while (!eof()) {
            skip_blanks();
            if (!eof() && peek() == '\n') {
                advance();
                continue;
            }
            return;
        }
    }
};

bool needs_quotes(const std::string& label) {
    for (char c : label)
        if (!std::isalnum(static_cast<unsigned char>(c))) return true;
    return label.empty();
}

void append_label(std::string& out, const std::string& label) {
    if (!needs_quotes(label)) {
        out += label;
        return;
    }
    out += '"';
    for (char c : label) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
}

}  // namespace

Lts parse_aut(std::string_view text) {
    Cursor cur{text};
    cur.skip_empty_lines();
    cur.skip_blanks();
    for (char c : {'d', 'e', 's'}) {
        if (cur.eof() || cur.peek() != c)
            throw ParseError(cur.line, "malformed header, expected 'des (...)'");
        cur.advance();
    }
    cur.expect('(');
    const std::uint64_t initial = cur.number();
    cur.expect(',');
    const std::uint64_t num_transitions = cur.number();
    cur.expect(',');
    const std::uint64_t num_states = cur.number();
    cur.expect(')');
    cur.end_of_line();

    if (num_states == 0)
        throw ParseError(1, "state count must be positive");
    if (initial >= num_states)
        throw ParseError(1, "initial state out of range");

    Lts::Builder builder;
    builder.ensure_states(num_states);
    builder.set_initial(static_cast<StateId>(initial));

    std::uint64_t seen = 0;
    while (true) {
        cur.skip_empty_lines();
        if (cur.eof()) break;
        const std::size_t line = cur.line;
        cur.expect('(');
        const std::uint64_t src = cur.number();
        cur.expect(',');
        const std::string label = cur.label();
        cur.expect(',');
        const std::uint64_t dst = cur.number();
        cur.expect(')');
        cur.end_of_line();
        if (src >= num_states)
            throw ParseError(line, "source state " + std::to_string(src) +
                                       " out of range");
        if (dst >= num_states)
            throw ParseError(line, "target state " + std::to_string(dst) +
                                       " out of range");
        builder.add(static_cast<StateId>(src), label,
                    static_cast<StateId>(dst));
        ++seen;
    }
    if (seen != num_transitions)
        throw ParseError(cur.line,
                         "transition count mismatch: header declares " +
                             std::to_string(num_transitions) + ", found " +
                             std::to_string(seen));
    return builder.build();
}

std::string write_aut(const Lts& lts) {
    std::string out = "des (";
    out += std::to_string(lts.initial_state());
    out += ',';
    out += std::to_string(lts.num_transitions());
    out += ',';
    out += std::to_string(lts.num_states());
    out += ")\n";
    for (const auto& tr : lts.transitions()) {
        out += '(';
        out += std::to_string(tr.src);
        out += ',';
        append_label(out, lts.actions().text(tr.act));
        out += ',';
        out += std::to_string(tr.dst);
        out += ")\n";
    }
    return out;
}

}  // namespace hmldist
