#include "dbcat/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "dbcat/errors.hpp"

namespace dbcat {

namespace {

enum class Tok { Ident, Int, Str, Sym, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 1;
    std::size_t col = 1;
};

const std::set<std::string> kKeywords = {"schema", "compose", "instance", "mapping", "graph", "constraint", "forall",
                                         "exists",  "sep",     "fed",      "empty",   "exact", "after",      "branch",
                                         "of"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '#';
}

std::string describe(const Token& t) {
    switch (t.kind) {
    case Tok::End:
        return "end of input";
    case Tok::Int:
        return "integer " + t.text;
    case Tok::Str:
        return "string";
    default:
        return "'" + t.text + "'";
    }
}

std::vector<Token> lex(std::string_view src, const std::string& file) {
    std::vector<Token> out;
    std::size_t i = 0, line = 1, col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
                ++col;
            }
        }
    };
    auto value_position = [&] {
        if (out.empty() || out.back().kind != Tok::Sym) return false;
        const std::string& s = out.back().text;
        return s == "(" || s == "," || s == "=" || s == "<=";
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (c == '#') {
            bool sentinel = i + 1 < src.size() && (src[i + 1] == 'A' || src[i + 1] == 'B') &&
                            (i + 2 >= src.size() || !ident_char(src[i + 2]));
            if (sentinel && value_position()) {
                throw ParseError("sentinel values #A and #B are reserved", line, col, file);
            }
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            t.kind = Tok::Ident;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                   (c == '-' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            std::size_t j = i + 1;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            t.kind = Tok::Int;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (c == '\'') {
            std::string text;
            std::size_t j = i + 1;
            for (;; ++j) {
                if (j >= src.size() || src[j] == '\n') throw ParseError("unterminated string", line, col, file);
                if (src[j] == '\\' && j + 1 < src.size()) {
                    text += src[++j];
                } else if (src[j] == '\'') {
                    break;
                } else {
                    text += src[j];
                }
            }
            t.kind = Tok::Str;
            t.text = std::move(text);
            advance(j + 1 - i);
        } else if (src.substr(i).starts_with("†")) {
            t.kind = Tok::Ident;
            t.text = "sep";
            advance(std::string_view("†").size());
        } else if (src.substr(i).starts_with("⊕")) {
            t.kind = Tok::Ident;
            t.text = "fed";
            advance(std::string_view("⊕").size());
        } else {
            static const char* two[] = {"=>", ":-", "<=", "->"};
            t.kind = Tok::Sym;
            for (const char* s : two) {
                if (src.substr(i).starts_with(s)) t.text = s;
            }
            if (t.text.empty()) {
                if (std::string_view("{}(),.:;=/[]").find(c) == std::string_view::npos) {
                    throw ParseError(std::string("unexpected character '") + c + "'", line, col, file);
                }
                t.text = std::string(1, c);
            }
            advance(t.text.size());
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.line = line;
    end.col = col;
    out.push_back(end);
    return out;
}

std::set<std::string> relation_names(const Instance& skeleton) {
    std::set<std::string> out;
    for (const auto& [name, r] : skeleton.relations()) {
        if (!r.is_bottom()) out.insert(name);
    }
    return out;
}

class Parser {
public:
    Parser(Workspace& ws, std::string_view text, std::string file)
        : ws_(ws), file_(std::move(file)), tokens_(lex(text, file_)) {}

    void declarations() {
        while (peek().kind != Tok::End) {
            const Token& t = peek();
            if (is_word("schema")) {
                schema();
            } else if (is_word("compose")) {
                compose();
            } else if (is_word("instance")) {
                instance();
            } else if (is_word("mapping")) {
                mapping();
            } else if (is_word("graph")) {
                graph();
            } else {
                fail(t, "expected a declaration (schema, compose, instance, mapping, graph), found " + describe(t));
            }
        }
    }

    ConjunctiveRule standalone_rule() {
        const Token& start = peek();
        ConjunctiveRule q = rule();
        accept(".");
        expect_end();
        checked(start, [&] { q.validate(); });
        return q;
    }

    SchemaTermPtr standalone_term() {
        SchemaTermPtr t = term();
        expect_end();
        return t;
    }

private:
    const Token& peek(std::size_t k = 0) const { return tokens_[std::min(pos_ + k, tokens_.size() - 1)]; }
    Token next() {
        Token t = peek();
        if (pos_ < tokens_.size() - 1) ++pos_;
        return t;
    }
    bool is_sym(const char* s, std::size_t k = 0) const { return peek(k).kind == Tok::Sym && peek(k).text == s; }
    bool is_word(const char* s, std::size_t k = 0) const {
        return peek(k).kind == Tok::Ident && peek(k).text == s;
    }
    bool accept(const char* s) {
        if (!is_sym(s)) return false;
        next();
        return true;
    }
    void expect(const char* s) {
        if (!accept(s)) fail(peek(), std::string("expected '") + s + "', found " + describe(peek()));
    }
    void expect_word(const char* s) {
        if (!is_word(s)) fail(peek(), std::string("expected '") + s + "', found " + describe(peek()));
        next();
    }
    void expect_end() {
        if (peek().kind != Tok::End) fail(peek(), "expected end of input, found " + describe(peek()));
    }
    std::string ident(const char* what) {
        if (peek().kind != Tok::Ident || kKeywords.contains(peek().text)) {
            fail(peek(), std::string("expected ") + what + ", found " + describe(peek()));
        }
        return next().text;
    }
    [[noreturn]] void fail(const Token& at, const std::string& msg) const {
        throw ParseError(msg, at.line, at.col, file_);
    }

    template <class F>
    void checked(const Token& at, F&& f) const {
        try {
            f();
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            fail(at, e.what());
        }
    }

    std::string declare(Workspace::Kind kind) {
        const Token& at = peek();
        std::string name = ident("a name");
        bool taken = ws_.schemas.contains(name) || ws_.composites.contains(name) || ws_.instances.contains(name) ||
                     ws_.mappings.contains(name) || ws_.graphs.contains(name);
        if (taken) fail(at, "duplicate declaration of " + name);
        ws_.order.emplace_back(kind, name);
        return name;
    }

    Term term_arg() {
        const Token& t = peek();
        if (t.kind == Tok::Int) {
            std::int64_t v = 0;
            auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
            if (ec != std::errc{} || p != t.text.data() + t.text.size()) fail(t, "integer out of range");
            next();
            return Term::value(Value::integer(v));
        }
        if (t.kind == Tok::Str) return Term::value(Value::string(next().text));
        if (t.kind == Tok::Ident && !kKeywords.contains(t.text)) return Term::var(next().text);
        fail(t, "expected a variable or constant, found " + describe(t));
    }

    Atom atom() {
        Atom a;
        a.relation = ident("a relation name");
        expect("(");
        if (!is_sym(")")) {
            do {
                a.args.push_back(term_arg());
            } while (accept(","));
        }
        expect(")");
        return a;
    }

    Conjunction conjunction() {
        Conjunction c;
        do {
            if (peek().kind == Tok::Ident && is_sym("(", 1)) {
                c.atoms.push_back(atom());
                continue;
            }
            Comparison cmp;
            cmp.lhs = term_arg();
            if (accept("=")) {
                cmp.op = Comparison::Op::Eq;
            } else if (accept("<=")) {
                cmp.op = Comparison::Op::Le;
            } else {
                fail(peek(), "expected '=' or '<=', found " + describe(peek()));
            }
            cmp.rhs = term_arg();
            c.comparisons.push_back(std::move(cmp));
        } while (accept(","));
        return c;
    }

    ConjunctiveRule rule_after_head(Atom head, const Token& at) {
        ConjunctiveRule q;
        q.head_name = head.relation;
        for (const Term& t : head.args) {
            if (!t.is_variable) fail(at, "rule heads take variables only");
            q.head.push_back(t.variable);
        }
        expect(":-");
        q.body = conjunction();
        return q;
    }

    ConjunctiveRule rule() {
        const Token& at = peek();
        if (accept(":-")) {
            ConjunctiveRule q;
            q.body = conjunction();
            return q;
        }
        Atom head = atom();
        return rule_after_head(std::move(head), at);
    }

    std::vector<std::string> var_list() {
        std::vector<std::string> out;
        if (is_sym(":")) return out;
        do {
            out.push_back(ident("a variable"));
        } while (accept(","));
        return out;
    }

    Constraint constraint() {
        if (accept(":-")) return BooleanQuery{conjunction()};
        expect_word("forall");
        std::vector<std::string> universal = var_list();
        expect(":");
        const Token& exists_left = peek();
        std::optional<std::vector<std::string>> y;
        if (is_word("exists")) {
            next();
            y = var_list();
            expect(":");
        }
        Conjunction left = conjunction();
        expect("=>");
        const Token& exists_right = peek();
        std::optional<std::vector<std::string>> z;
        if (is_word("exists")) {
            next();
            z = var_list();
            expect(":");
        }
        Conjunction right = conjunction();
        bool egd = right.atoms.empty() && right.comparisons.size() == 1 &&
                   right.comparisons[0].op == Comparison::Op::Eq && right.comparisons[0].lhs.is_variable &&
                   right.comparisons[0].rhs.is_variable && !y && !z;
        if (egd) return Egd{std::move(left), right.comparisons[0].lhs.variable, right.comparisons[0].rhs.variable};
        Tgd t{std::move(universal), std::move(left), std::move(right)};
        auto same = [](std::vector<std::string> a, std::vector<std::string> b) {
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            return a == b;
        };
        if (y && !same(*y, t.left_existential())) fail(exists_left, "exists list does not match the left side");
        if (z && !same(*z, t.right_existential())) fail(exists_right, "exists list does not match the right side");
        return t;
    }

    void schema() {
        const Token& at = next();
        std::string name = declare(Workspace::Kind::Schema);
        Schema s;
        s.name = name;
        std::vector<Token> constraint_at;
        expect("{");
        while (!accept("}")) {
            if (is_word("constraint")) {
                constraint_at.push_back(next());
                s.constraints.push_back(constraint());
                expect(".");
                continue;
            }
            const Token& rt = peek();
            std::string rel = ident("a relation declaration or 'constraint'");
            expect("/");
            if (peek().kind != Tok::Int || peek().text.starts_with("-")) {
                fail(peek(), "expected an arity, found " + describe(peek()));
            }
            std::size_t arity = std::stoul(next().text);
            if (!s.relations.emplace(rel, arity).second) fail(rt, "relation " + rel + " declared twice");
            expect(".");
        }
        for (std::size_t i = 0; i < s.constraints.size(); ++i) {
            Schema one{s.name, s.relations, {s.constraints[i]}};
            checked(constraint_at[i], [&] { one.validate(); });
        }
        checked(at, [&] { s.validate(); });
        ws_.schemas.emplace(name, std::make_shared<const Schema>(std::move(s)));
    }

    SchemaTermPtr primary() {
        const Token& t = peek();
        if (accept("(")) {
            SchemaTermPtr inner = term();
            expect(")");
            return inner;
        }
        if (is_word("empty")) {
            next();
            return SchemaTerm::empty();
        }
        std::string name = ident("a schema name");
        if (auto it = ws_.schemas.find(name); it != ws_.schemas.end()) return SchemaTerm::atom(it->second);
        if (auto it = ws_.composites.find(name); it != ws_.composites.end()) return it->second;
        fail(t, "unknown schema " + name);
    }

    SchemaTermPtr term() {
        SchemaTermPtr t = primary();
        for (;;) {
            if (is_word("sep")) {
                next();
                t = SchemaTerm::sep(t, primary());
            } else if (is_word("fed")) {
                next();
                t = SchemaTerm::fed(t, primary());
            } else {
                return t;
            }
        }
    }

    void compose() {
        const Token& at = next();
        std::string name = declare(Workspace::Kind::Compose);
        expect("=");
        SchemaTermPtr t = term();
        accept(".");
        ws_.composites.emplace(name, std::move(t));
    }

    void instance() {
        const Token& at = next();
        std::string name = declare(Workspace::Kind::Instance);
        expect_word("of");
        SchemaTermPtr of = term();
        Instance skeleton = flatten(*of).skeleton;
        std::map<std::string, std::set<Tuple>> rows;
        expect("{");
        while (!accept("}")) {
            const Token& ft = peek();
            Atom fact = atom();
            expect(".");
            if (!skeleton.has_relation(fact.relation) || skeleton.relation(fact.relation).is_bottom()) {
                fail(ft, "relation " + fact.relation + " is not in " + of->to_string());
            }
            std::size_t arity = skeleton.relation(fact.relation).arity();
            if (fact.args.size() != arity) {
                fail(ft, "relation " + fact.relation + " has arity " + std::to_string(arity));
            }
            Tuple t;
            for (const Term& a : fact.args) {
                if (a.is_variable) fail(ft, "facts take constants only");
                t.push_back(a.constant);
            }
            rows[fact.relation].insert(std::move(t));
        }
        std::vector<Relation> rels;
        for (const auto& [rel, r] : skeleton.relations()) {
            if (r.is_bottom()) continue;
            auto it = rows.find(rel);
            rels.emplace_back(rel, r.arity(), it == rows.end() ? std::set<Tuple>{} : it->second);
        }
        std::map<std::string, ComponentId> part = skeleton.partition();
        part.erase(std::string(kBottomName));
        Instance data = rels.empty() ? Instance::bottom() : Instance(std::move(rels), std::move(part));
        ws_.instances.emplace(name, InstanceDecl{name, std::move(of), std::move(data)});
    }

    void check_atoms(const Token& at, const Conjunction& c, const Instance& skeleton, const std::string& where) {
        for (const Atom& a : c.atoms) {
            if (!skeleton.has_relation(a.relation) || skeleton.relation(a.relation).is_bottom()) {
                fail(at, "relation " + a.relation + " is not in " + where);
            }
            if (skeleton.relation(a.relation).arity() != a.args.size()) {
                fail(at, "atom " + a.to_string() + " does not match arity " +
                             std::to_string(skeleton.relation(a.relation).arity()));
            }
        }
    }

    void mapping() {
        const Token& at = next();
        std::string name = declare(Workspace::Kind::Mapping);
        SchemaMapping m;
        m.name = name;
        expect(":");
        m.source = term();
        expect("->");
        m.target = term();
        Instance src = flatten(*m.source).skeleton;
        Instance tgt = flatten(*m.target).skeleton;
        std::set<std::string> target_rels = relation_names(tgt);
        expect("{");
        while (!accept("}")) {
            if (is_word("exact")) {
                next();
                accept(".");
                m.exact = true;
                continue;
            }
            const Token& pt = peek();
            ConjunctiveRule lhs = rule();
            checked(pt, [&] { lhs.validate(); });
            check_atoms(pt, lhs.body, src, m.source->to_string());
            expect("=>");
            const Token& rt = peek();
            Atom head = atom();
            MappingPair p;
            if (is_sym(":-")) {
                ConjunctiveRule rhs = rule_after_head(std::move(head), rt);
                checked(rt, [&] { rhs.validate(); });
                check_atoms(rt, rhs.body, tgt, m.target->to_string());
                checked(pt, [&] { p = make_pair(lhs, rhs, target_rels); });
            } else {
                if (target_rels.contains(head.relation) && tgt.relation(head.relation).arity() != head.args.size()) {
                    fail(rt, "atom " + head.to_string() + " does not match arity " +
                                 std::to_string(tgt.relation(head.relation).arity()));
                }
                checked(pt, [&] { p = make_pair(lhs, head, target_rels); });
            }
            expect(".");
            m.pairs.push_back(std::move(p));
        }
        ws_.mappings.emplace(name, std::move(m));
    }

    void graph() {
        const Token& at = next();
        std::string name = declare(Workspace::Kind::Graph);
        GraphDecl g;
        g.name = name;
        g.graph.name = name;
        expect("{");
        auto in_graph = [&](const std::string& n) -> const SchemaMapping* {
            for (const SchemaMapping& m : g.graph.mappings) {
                if (m.name == n) return &m;
            }
            return nullptr;
        };
        auto add = [&](const Token& t, SchemaMapping m) {
            if (in_graph(m.name)) fail(t, "mapping " + m.name + " occurs twice in graph " + name);
            g.graph.mappings.push_back(std::move(m));
        };
        auto workspace_mapping = [&](const Token& t, const std::string& n) -> const SchemaMapping& {
            auto it = ws_.mappings.find(n);
            if (it == ws_.mappings.end()) fail(t, "unknown mapping " + n);
            return it->second;
        };
        while (!accept("}")) {
            const Token& st = peek();
            GraphStatement s;
            if (peek().kind == Tok::Ident && is_sym("=", 1)) {
                s.result = ident("a mapping name");
                next();
                if (!is_word("branch", 1)) fail(peek(1), "expected 'branch', found " + describe(peek(1)));
            }
            std::string first = ident("a mapping name");
            if (is_word("branch")) {
                next();
                s.kind = GraphStatement::Kind::Branch;
                const Token& second_tok = peek();
                std::string second = ident("a mapping name");
                s.names = {first, second};
                const SchemaMapping& m1 = workspace_mapping(st, first);
                const SchemaMapping& m2 = workspace_mapping(second_tok, second);
                SchemaMapping b;
                checked(st, [&] { b = branch(m1, m2, s.result); });
                if (ws_.mappings.contains(b.name)) fail(st, "branch result " + b.name + " clashes with a mapping");
                add(st, std::move(b));
            } else if (is_word("after")) {
                s.kind = GraphStatement::Kind::After;
                s.names.push_back(first);
                while (is_word("after")) {
                    next();
                    s.names.push_back(ident("a mapping name"));
                }
                std::optional<GraphPath> path;
                for (auto it = s.names.rbegin(); it != s.names.rend(); ++it) {
                    const SchemaMapping* m = in_graph(*it);
                    if (!m) fail(st, "mapping " + *it + " must be listed in graph " + name + " before it is composed");
                    GraphPath step = path_of(*m);
                    checked(st, [&] { path = path ? seq_compose(step, *path) : step; });
                }
                g.graph.compositions.push_back(*path);
            } else {
                s.kind = GraphStatement::Kind::Ref;
                s.names = {first};
                add(st, workspace_mapping(st, first));
            }
            expect(";");
            g.statements.push_back(std::move(s));
        }
        ws_.graphs.emplace(name, std::move(g));
    }

    Workspace& ws_;
    std::string file_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

std::string indent_lines(const std::vector<std::string>& lines) {
    std::string out;
    for (const std::string& l : lines) out += "  " + l + "\n";
    return out;
}

}  // namespace

SchemaTermPtr Workspace::term(const std::string& name) const {
    if (auto it = schemas.find(name); it != schemas.end()) return SchemaTerm::atom(it->second);
    if (auto it = composites.find(name); it != composites.end()) return it->second;
    throw SchemaError("unknown schema " + name);
}

const InstanceDecl& Workspace::instance(const std::string& name) const {
    auto it = instances.find(name);
    if (it == instances.end()) throw SchemaError("unknown instance " + name);
    return it->second;
}

const SchemaMapping& Workspace::mapping(const std::string& name) const {
    auto it = mappings.find(name);
    if (it == mappings.end()) throw SchemaError("unknown mapping " + name);
    return it->second;
}

const GraphDecl& Workspace::graph(const std::string& name) const {
    auto it = graphs.find(name);
    if (it == graphs.end()) throw SchemaError("unknown graph " + name);
    return it->second;
}

bool Workspace::operator==(const Workspace& o) const {
    if (order != o.order || bound != o.bound) return false;
    for (const auto& [kind, name] : order) {
        switch (kind) {
        case Kind::Schema:
            if (*schemas.at(name) != *o.schemas.at(name)) return false;
            break;
        case Kind::Compose:
            if (composites.at(name)->to_string() != o.composites.at(name)->to_string()) return false;
            break;
        case Kind::Instance: {
            const InstanceDecl& a = instances.at(name);
            const InstanceDecl& b = o.instances.at(name);
            if (a.of->to_string() != b.of->to_string() || a.data != b.data) return false;
            break;
        }
        case Kind::Mapping: {
            const SchemaMapping& a = mappings.at(name);
            const SchemaMapping& b = o.mappings.at(name);
            if (a.source->to_string() != b.source->to_string() || a.target->to_string() != b.target->to_string() ||
                a.pairs != b.pairs || a.exact != b.exact) {
                return false;
            }
            break;
        }
        case Kind::Graph:
            if (graphs.at(name).statements != o.graphs.at(name).statements) return false;
            break;
        }
    }
    return true;
}

void parse_into(Workspace& ws, std::string_view text, const std::string& file) {
    Parser(ws, text, file).declarations();
}

Workspace parse_text(std::string_view text, const std::string& file) {
    Workspace ws;
    parse_into(ws, text, file);
    return ws;
}

Workspace parse_workspace(const std::vector<std::string>& files) {
    Workspace ws;
    for (const std::string& f : files) {
        std::ifstream in(f, std::ios::binary);
        if (!in) throw Error("cannot read " + f);
        std::ostringstream buf;
        buf << in.rdbuf();
        parse_into(ws, buf.str(), f);
    }
    return ws;
}

ConjunctiveRule parse_rule(std::string_view text) {
    Workspace scratch;
    return Parser(scratch, text, "<rule>").standalone_rule();
}

SchemaTermPtr parse_term(const Workspace& ws, std::string_view text) {
    Workspace copy = ws;
    return Parser(copy, text, "<term>").standalone_term();
}

std::string serialize(const Schema& s) {
    std::vector<std::string> lines;
    for (const auto& [rel, arity] : s.relations) lines.push_back(rel + "/" + std::to_string(arity) + ".");
    for (const Constraint& c : s.constraints) lines.push_back("constraint " + to_string(c) + ".");
    return "schema " + s.name + " {\n" + indent_lines(lines) + "}\n";
}

std::string serialize(const InstanceDecl& i) {
    std::vector<std::string> lines;
    for (const auto& [rel, r] : i.data.relations()) {
        for (const Tuple& t : r.tuples()) lines.push_back(rel + to_string(t) + ".");
    }
    return "instance " + i.name + " of " + i.of->to_string() + " {\n" + indent_lines(lines) + "}\n";
}

std::string serialize(const SchemaMapping& m) {
    std::vector<std::string> lines;
    for (const MappingPair& p : m.pairs) lines.push_back(p.to_string() + ".");
    if (m.exact) lines.emplace_back("exact.");
    return "mapping " + m.name + " : " + m.source->to_string() + " -> " + m.target->to_string() + " {\n" +
           indent_lines(lines) + "}\n";
}

std::string serialize(const GraphDecl& g) {
    std::vector<std::string> lines;
    for (const GraphStatement& s : g.statements) {
        switch (s.kind) {
        case GraphStatement::Kind::Ref:
            lines.push_back(s.names[0] + ";");
            break;
        case GraphStatement::Kind::After: {
            std::string l = s.names[0];
            for (std::size_t i = 1; i < s.names.size(); ++i) l += " after " + s.names[i];
            lines.push_back(l + ";");
            break;
        }
        case GraphStatement::Kind::Branch:
            lines.push_back((s.result.empty() ? "" : s.result + " = ") + s.names[0] + " branch " + s.names[1] + ";");
            break;
        }
    }
    return "graph " + g.name + " {\n" + indent_lines(lines) + "}\n";
}

std::string serialize(const Workspace& ws) {
    std::string out;
    for (const auto& [kind, name] : ws.order) {
        if (!out.empty()) out += "\n";
        switch (kind) {
        case Workspace::Kind::Schema:
            out += serialize(*ws.schemas.at(name));
            break;
        case Workspace::Kind::Compose:
            out += "compose " + name + " = " + ws.composites.at(name)->to_string() + "\n";
            break;
        case Workspace::Kind::Instance:
            out += serialize(ws.instances.at(name));
            break;
        case Workspace::Kind::Mapping:
            out += serialize(ws.mappings.at(name));
            break;
        case Workspace::Kind::Graph:
            out += serialize(ws.graphs.at(name));
            break;
        }
    }
    return out;
}

}  // namespace dbcat
