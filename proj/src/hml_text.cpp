#include "hmldist/hml_text.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

namespace hmldist {

namespace {

bool bare_label(const std::string& text) {
    if (text.empty()) return false;
    for (char c : text)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

void emit_label(std::string& out, const std::string& text) {
    if (bare_label(text)) {
        out += text;
        return;
    }
    out += '"';
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
}

struct Renderer {
    FormulaStore& store;
    const std::map<NodeId, std::string>* names = nullptr;  // equations mode

    void print(NodeId id, std::string& out, bool follow_name) {
        if (!follow_name && names) {
            auto it = names->find(id);
            if (it != names->end()) {
                out += it->second;
                return;
            }
        }
        const FormulaNode& n = store.node(id);
        switch (n.kind) {
            case NodeKind::True:
                out += "true";
                break;
            case NodeKind::Diamond: {
                out += '<';
                emit_label(out, store.actions().text(n.action));
                out += '>';
                print_tight(n.child, out);
                break;
            }
            case NodeKind::Neg:
                out += '!';
                print_tight(n.child, out);
                break;
            case NodeKind::And:
                for (std::size_t i = 0; i < n.children.size(); ++i) {
                    if (i > 0) out += " && ";
                    print(n.children[i], out, false);
                }
                break;
        }
    }

    // child position of a prefix operator: conjunctions need parentheses
    void print_tight(NodeId id, std::string& out) {
        const bool named = names && names->count(id) > 0;
        if (!named && store.node(id).kind == NodeKind::And) {
            out += '(';
            print(id, out, false);
            out += ')';
        } else {
            print(id, out, false);
        }
    }
};

void count_refs(const FormulaStore& store, NodeId id,
                std::map<NodeId, std::uint32_t>& refs) {
    const bool first = refs.find(id) == refs.end();
    ++refs[id];
    if (!first) return;
    const FormulaNode& n = store.node(id);
    if (n.kind == NodeKind::Diamond || n.kind == NodeKind::Neg)
        count_refs(store, n.child, refs);
    else if (n.kind == NodeKind::And)
        for (NodeId c : n.children) count_refs(store, c, refs);
}

void name_order(const FormulaStore& store, NodeId id,
                const std::map<NodeId, std::uint32_t>& refs, NodeId root,
                std::vector<NodeId>& order, std::set<NodeId>& seen) {
    if (!seen.insert(id).second) return;
    if (store.node(id).kind != NodeKind::True &&
        (id == root || refs.at(id) >= 2))
        order.push_back(id);
    const FormulaNode& n = store.node(id);
    if (n.kind == NodeKind::Diamond || n.kind == NodeKind::Neg)
        name_order(store, n.child, refs, root, order, seen);
    else if (n.kind == NodeKind::And)
        for (NodeId c : n.children) name_order(store, c, refs, root, order, seen);
}

}  // namespace

std::string render(FormulaStore& store, NodeId id, RenderStyle style) {
    if (style == RenderStyle::Inline) {
        if (store.tree_nodes(id) > 1000000)
            throw std::runtime_error(
                "formula too large to render inline; use the equations style");
        std::string out;
        Renderer{store, nullptr}.print(id, out, false);
        return out;
    }

    std::map<NodeId, std::uint32_t> refs;
    count_refs(store, id, refs);
    std::vector<NodeId> order;
    std::set<NodeId> seen;
    name_order(store, id, refs, id, order, seen);
    if (order.empty())  // the formula is `true`
        return "phi1 = true\n";

    std::map<NodeId, std::string> names;
    for (std::size_t i = 0; i < order.size(); ++i)
        names[order[i]] = "phi" + std::to_string(i + 1);

    Renderer renderer{store, &names};
    std::string out;
    for (NodeId eq : order) {
        out += names[eq];
        out += " = ";
        renderer.print(eq, out, true);
        out += '\n';
    }
    return out;
}

namespace {

// ---- parsing ----

struct Ast;
using AstPtr = std::unique_ptr<Ast>;

struct Ast {
    enum Kind { True, False, Dia, Box, Neg, And, Or, Ref } kind;
    std::string text;           // label or name
    std::vector<AstPtr> kids;
    std::size_t line = 1;
};

struct Lexer {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line = 1;

    void skip_space_in_line() {
        while (pos < text.size() &&
               (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r'))
            ++pos;
    }
    bool eof() {
        skip_space_in_line();
        return pos >= text.size();
    }
    char peek() {
        skip_space_in_line();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool at_separator() {
        skip_space_in_line();
        return pos < text.size() && (text[pos] == '\n' || text[pos] == ';');
    }
    void skip_separators() {
        while (pos < text.size()) {
            skip_space_in_line();
            if (pos < text.size() && (text[pos] == '\n' || text[pos] == ';')) {
                if (text[pos] == '\n') ++line;
                ++pos;
            } else {
                return;
            }
        }
    }
    [[noreturn]] void fail(const std::string& what) {
        throw ParseError(line, what);
    }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }
    bool ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    std::string ident() {
        skip_space_in_line();
        if (pos >= text.size() || !ident_start(text[pos]))
            fail("expected an identifier");
        std::string out;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                text[pos] == '_'))
            out += text[pos++];
        return out;
    }
    std::string label(char close) {
        skip_space_in_line();
        if (pos >= text.size()) fail("expected a label");
        std::string out;
        if (text[pos] == '"') {
            ++pos;
            while (pos < text.size() && text[pos] != '"') {
                if (text[pos] == '\\' && pos + 1 < text.size()) ++pos;
                out += text[pos++];
            }
            if (pos >= text.size()) fail("unterminated quoted label");
            ++pos;
        } else {
            while (pos < text.size() && text[pos] != close &&
                   text[pos] != '\n')
                out += text[pos++];
            while (!out.empty() && (out.back() == ' ' || out.back() == '\t'))
                out.pop_back();
        }
        if (out.empty()) fail("empty label");
        return out;
    }
};

struct Parser {
    Lexer lex;

    AstPtr mk(Ast::Kind kind) {
        auto node = std::make_unique<Ast>();
        node->kind = kind;
        node->line = lex.line;
        return node;
    }

    AstPtr expr() {
        AstPtr left = conj();
        while (lex.peek() == '|') {
            lex.expect('|');
            lex.expect('|');
            AstPtr node = mk(Ast::Or);
            node->kids.push_back(std::move(left));
            node->kids.push_back(conj());
            left = std::move(node);
        }
        return left;
    }

    AstPtr conj() {
        AstPtr left = unary();
        while (lex.peek() == '&') {
            lex.expect('&');
            lex.expect('&');
            AstPtr node = mk(Ast::And);
            node->kids.push_back(std::move(left));
            node->kids.push_back(unary());
            left = std::move(node);
        }
        return left;
    }

    AstPtr unary() {
        const char c = lex.peek();
        if (c == '!') {
            lex.expect('!');
            AstPtr node = mk(Ast::Neg);
            node->kids.push_back(unary());
            return node;
        }
        if (c == '<') {
            lex.expect('<');
            AstPtr node = mk(Ast::Dia);
            node->text = lex.label('>');
            lex.expect('>');
            node->kids.push_back(unary());
            return node;
        }
        if (c == '[') {
            lex.expect('[');
            AstPtr node = mk(Ast::Box);
            node->text = lex.label(']');
            lex.expect(']');
            node->kids.push_back(unary());
            return node;
        }
        return atom();
    }

    AstPtr atom() {
        const char c = lex.peek();
        if (c == '(') {
            lex.expect('(');
            AstPtr inner = expr();
            lex.expect(')');
            return inner;
        }
        const std::string name = lex.ident();
        if (name == "true") return mk(Ast::True);
        if (name == "false") return mk(Ast::False);
        AstPtr node = mk(Ast::Ref);
        node->text = name;
        return node;
    }
};

struct Resolver {
    FormulaStore& store;
    std::map<std::string, const Ast*> equations;
    std::map<std::string, NodeId> resolved;
    std::set<std::string> in_progress;

    NodeId resolve(const Ast& ast) {
        switch (ast.kind) {
            case Ast::True:
                return store.mk_true();
            case Ast::False:
                return store.mk_neg(store.mk_true());
            case Ast::Dia:
                return store.mk_diamond(store.action(ast.text),
                                        resolve(*ast.kids[0]));
            case Ast::Box:  // [a]phi == !<a>!phi
                return store.mk_neg(store.mk_diamond(
                    store.action(ast.text),
                    store.mk_neg(resolve(*ast.kids[0]))));
            case Ast::Neg:
                return store.mk_neg(resolve(*ast.kids[0]));
            case Ast::And: {
                const NodeId l = resolve(*ast.kids[0]);
                const NodeId r = resolve(*ast.kids[1]);
                return store.mk_and({l, r});
            }
            case Ast::Or: {  // a || b == !(!a && !b)
                const NodeId l = store.mk_neg(resolve(*ast.kids[0]));
                const NodeId r = store.mk_neg(resolve(*ast.kids[1]));
                return store.mk_neg(store.mk_and({l, r}));
            }
            case Ast::Ref: {
                if (auto it = resolved.find(ast.text); it != resolved.end())
                    return it->second;
                auto eq = equations.find(ast.text);
                if (eq == equations.end())
                    throw ParseError(ast.line,
                                     "undefined name '" + ast.text + "'");
                if (!in_progress.insert(ast.text).second)
                    throw ParseError(ast.line,
                                     "cyclic definition of '" + ast.text + "'");
                const NodeId id = resolve(*eq->second);
                in_progress.erase(ast.text);
                resolved.emplace(ast.text, id);
                return id;
            }
        }
        throw std::logic_error("unreachable");
    }
};

}  // namespace

NodeId parse_formula(FormulaStore& store, std::string_view text) {
    Parser parser{Lexer{text}};
    parser.lex.skip_separators();
    if (parser.lex.eof()) throw ParseError(parser.lex.line, "empty input");

    // Look ahead for `name =` to decide between equations and a bare expr.
    Lexer probe = parser.lex;
    bool equation_form = false;
    if (probe.ident_start(probe.peek())) {
        try {
            probe.ident();
            equation_form = probe.peek() == '=';
        } catch (const ParseError&) {
            equation_form = false;
        }
    }

    if (!equation_form) {
        AstPtr ast = parser.expr();
        parser.lex.skip_separators();
        if (!parser.lex.eof())
            parser.lex.fail("trailing input after formula");
        Resolver resolver{store, {}, {}, {}};
        return resolver.resolve(*ast);
    }

    std::vector<std::pair<std::string, AstPtr>> defs;
    while (!parser.lex.eof()) {
        const std::string name = parser.lex.ident();
        if (name == "true" || name == "false")
            parser.lex.fail("'" + name + "' cannot be an equation name");
        parser.lex.expect('=');
        AstPtr body = parser.expr();
        if (!parser.lex.eof() && !parser.lex.at_separator())
            parser.lex.fail("expected end of equation");
        parser.lex.skip_separators();
        for (const auto& [existing, _] : defs)
            if (existing == name)
                parser.lex.fail("duplicate definition of '" + name + "'");
        defs.emplace_back(name, std::move(body));
    }

    Resolver resolver{store, {}, {}, {}};
    for (const auto& [name, body] : defs)
        resolver.equations.emplace(name, body.get());
    Ast root;
    root.kind = Ast::Ref;
    root.text = defs.front().first;
    return resolver.resolve(root);
}

}  // namespace hmldist
