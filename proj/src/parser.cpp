#include "gdlog/parser.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace gdlog {

ParseError::ParseError(SourceSpan s, const std::string& msg)
    : std::runtime_error(s.str() + ": " + msg), span(std::move(s)) {}

namespace {

enum class Tok { Ident, String, Number, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    Value value = Value::integer(0);
    SourceSpan span;
};

class Lexer {
public:
    Lexer(const std::string& source, std::string file)
        : src_(source), file_(std::move(file)) {}

    std::vector<Token> all() {
        std::vector<Token> out;
        for (;;) {
            Token t = next();
            const bool end = t.kind == Tok::End;
            out.push_back(std::move(t));
            if (end) return out;
        }
    }

private:
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(span(1), msg);
    }

    SourceSpan span(int length) const { return SourceSpan{file_, line_, col_, length}; }

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_trivia() {
        for (;;) {
            char c = peek();
            if (c == '%') {
                while (peek() != '\n' && peek() != '\0') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                return;
            }
        }
    }

    static bool ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    static bool ident_cont(char c) {
        return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '\'';
    }

    Token next() {
        skip_trivia();
        Token t;
        t.span = span(1);
        char c = peek();
        if (c == '\0') return t;

        if (ident_start(c)) {
            t.kind = Tok::Ident;
            while (ident_cont(peek())) t.text += advance();
            t.span.length = static_cast<int>(t.text.size());
            return t;
        }
        if (c == '"') return lex_string();
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && std::isdigit(static_cast<unsigned char>(peek(1)))))
            return lex_number();

        t.kind = Tok::Punct;
        if (c == ':' && peek(1) == '-') {
            advance();
            advance();
            t.text = ":-";
            t.span.length = 2;
            return t;
        }
        if (std::string("()[]{},.:=").find(c) == std::string::npos)
            fail(std::string("unexpected character '") + c + "'");
        t.text = advance();
        return t;
    }

    Token lex_string() {
        Token t;
        t.kind = Tok::String;
        t.span = span(1);
        advance();  // opening quote
        std::string s;
        for (;;) {
            char c = peek();
            if (c == '\0' || c == '\n') fail("unterminated string");
            advance();
            if (c == '"') break;
            if (c == '\\') {
                char e = peek();
                if (e == '\0') fail("unterminated string");
                advance();
                switch (e) {
                    case 'n': s += '\n'; break;
                    case 't': s += '\t'; break;
                    case '"': s += '"'; break;
                    case '\\': s += '\\'; break;
                    default: fail("unknown escape in string");
                }
            } else {
                s += c;
            }
        }
        t.value = Value::symbol(std::move(s));
        t.span.length = col_ - t.span.column;
        return t;
    }

    Token lex_number() {
        Token t;
        t.kind = Tok::Number;
        t.span = span(1);
        std::string text;
        if (peek() == '-') text += advance();
        while (std::isdigit(static_cast<unsigned char>(peek()))) text += advance();

        if (peek() == '/' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
            advance();
            std::string denom;
            while (std::isdigit(static_cast<unsigned char>(peek()))) denom += advance();
            Rat r{boost::multiprecision::cpp_int(text),
                  boost::multiprecision::cpp_int(denom)};
            t.value = Value::rational(std::move(r));
            t.text = text + "/" + denom;
        } else if ((peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) ||
                   peek() == 'e' || peek() == 'E') {
            if (peek() == '.') {
                text += advance();
                while (std::isdigit(static_cast<unsigned char>(peek()))) text += advance();
            }
            if (peek() == 'e' || peek() == 'E') {
                text += advance();
                if (peek() == '+' || peek() == '-') text += advance();
                if (!std::isdigit(static_cast<unsigned char>(peek())))
                    fail("malformed exponent");
                while (std::isdigit(static_cast<unsigned char>(peek()))) text += advance();
            }
            double d = 0.0;
            auto res = std::from_chars(text.data(), text.data() + text.size(), d);
            if (res.ec != std::errc()) fail("malformed real literal");
            t.value = Value::real(d);
            t.text = text;
        } else {
            std::int64_t i = 0;
            auto res = std::from_chars(text.data(), text.data() + text.size(), i);
            if (res.ec != std::errc()) fail("integer literal out of range");
            t.value = Value::integer(i);
            t.text = text;
        }
        t.span.length = col_ - t.span.column;
        return t;
    }

    const std::string& src_;
    std::string file_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    Parser(const std::string& source, const std::string& file)
        : tokens_(Lexer(source, file).all()) {}

    Program program() {
        Program p;
        while (!at_end()) {
            if (accept_ident("extensional")) {
                declaration(p.extensional, RelationKind::Extensional);
            } else if (accept_ident("intensional")) {
                declaration(p.intensional, RelationKind::Intensional);
            } else if (accept_ident("alias")) {
                alias(p);
            } else {
                Rule r = rule(static_cast<int>(p.rules.size()), /*allow_dist=*/true);
                p.rules.push_back(std::move(r));
            }
        }
        return p;
    }

    Instance facts() {
        Instance d;
        while (!at_end()) {
            Fact f = ground_atom();
            expect_punct(".");
            d.insert(std::move(f));
        }
        return d;
    }

    Constraint constraint() {
        Constraint c;
        while (!at_end()) {
            ConstraintRule r;
            r.span = peek().span;
            r.head = atom(/*allow_dist=*/false);
            expect_punct(":-");
            do {
                Literal lit;
                lit.negated = accept_ident("not");
                lit.atom = atom(/*allow_dist=*/false);
                r.body.push_back(std::move(lit));
            } while (accept_punct(","));
            expect_punct(".");
            c.rules.push_back(std::move(r));
        }
        return c;
    }

    InputPdb pdb() {
        InputPdb p;
        while (!at_end()) {
            expect_ident("world");
            Value w = number();
            if (w.is_real()) throw ParseError(prev().span, "world weight must be exact");
            p.worlds.emplace_back(w.to_rat(), world_block());
        }
        Rat total = 0;
        for (const auto& [w, inst] : p.worlds) total += w;
        if (total > 1)
            throw ParseError(peek().span, "world weights exceed 1");
        return p;
    }

    ParsedDistribution distribution() {
        expect_ident("gdlog_distribution");
        expect_ident("v1");
        expect_ident("mode");
        if (accept_ident("exact")) {
            WorldDistribution d;
            expect_ident("bottom");
            d.bottom = exact_number();
            while (!at_end()) {
                expect_ident("world");
                Rat w = exact_number();
                d.worlds[world_block()] += w;
            }
            return d;
        }
        expect_ident("empirical");
        EmpiricalDistribution d;
        expect_ident("seed");
        d.seed = static_cast<std::uint64_t>(integer());
        expect_ident("runs");
        d.runs = static_cast<std::size_t>(integer());
        expect_ident("bottom");
        d.bottom_count = static_cast<std::size_t>(integer());
        while (!at_end()) {
            expect_ident("world");
            const std::size_t c = static_cast<std::size_t>(integer());
            Instance w = world_block();
            d.counts[std::move(w)] += c;
        }
        return d;
    }

private:
    const Token& peek() const { return tokens_[idx_]; }
    const Token& prev() const { return tokens_[idx_ - 1]; }
    bool at_end() const { return peek().kind == Tok::End; }

    const Token& advance() { return tokens_[idx_++]; }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(peek().span, msg); }

    bool accept_punct(const std::string& text) {
        if (peek().kind == Tok::Punct && peek().text == text) {
            advance();
            return true;
        }
        return false;
    }

    void expect_punct(const std::string& text) {
        if (!accept_punct(text)) fail("expected '" + text + "'");
    }

    bool accept_ident(const std::string& text) {
        if (peek().kind == Tok::Ident && peek().text == text) {
            advance();
            return true;
        }
        return false;
    }

    void expect_ident(const std::string& text) {
        if (!accept_ident(text)) fail("expected '" + text + "'");
    }

    std::string ident() {
        if (peek().kind != Tok::Ident) fail("expected an identifier");
        return advance().text;
    }

    Value number() {
        if (peek().kind != Tok::Number) fail("expected a number");
        return advance().value;
    }

    Rat exact_number() {
        Value v = number();
        if (v.is_real()) throw ParseError(prev().span, "expected an exact number");
        return v.to_rat();
    }

    std::int64_t integer() {
        Value v = number();
        if (!v.is_int()) throw ParseError(prev().span, "expected an integer");
        return v.as_int();
    }

    Value constant() {
        if (peek().kind == Tok::String) return advance().value;
        return number();
    }

    void declaration(Schema& schema, RelationKind kind) {
        RelationSymbol rel;
        rel.kind = kind;
        SourceSpan at = peek().span;
        rel.name = ident();
        if (accept_punct("(")) {
            if (!accept_punct(")")) {
                do {
                    ident();  // attribute name, documentation only
                    expect_punct(":");
                    std::string sort = ident();
                    if (sort == "sym")
                        rel.domains.push_back(DomainTag::Sym);
                    else if (sort == "int")
                        rel.domains.push_back(DomainTag::Int);
                    else if (sort == "real")
                        rel.domains.push_back(DomainTag::Real);
                    else
                        throw ParseError(prev().span,
                                         "unknown sort " + sort + " (sym, int or real)");
                } while (accept_punct(","));
                expect_punct(")");
            }
        }
        expect_punct(".");
        if (!schema.emplace(rel.name, rel).second)
            throw ParseError(at, "relation " + rel.name + " declared twice");
    }

    void alias(Program& p) {
        SourceSpan at = peek().span;
        std::string name = ident();
        expect_punct("=");
        std::string target = ident();
        expect_punct(".");
        if (!p.dist_aliases.emplace(name, p.resolve_dist(target)).second)
            throw ParseError(at, "alias " + name + " declared twice");
    }

    Term term(bool allow_dist) {
        if (peek().kind == Tok::String || peek().kind == Tok::Number)
            return Term::constant(constant());
        SourceSpan at = peek().span;
        std::string name = ident();
        if (accept_punct("[")) {
            if (!allow_dist)
                throw ParseError(at, "distribution term is not allowed here");
            DistCall call;
            call.name = std::move(name);
            if (!accept_punct("]")) {
                do {
                    Term p = term(/*allow_dist=*/false);
                    call.params.push_back(std::move(p));
                } while (accept_punct(","));
                expect_punct("]");
            }
            return Term::dist(std::move(call));
        }
        return Term::var(std::move(name));
    }

    Atom atom(bool allow_dist) {
        Atom a;
        a.span = peek().span;
        a.relation = ident();
        if (accept_punct("(")) {
            if (!accept_punct(")")) {
                do {
                    a.args.push_back(term(allow_dist));
                } while (accept_punct(","));
                expect_punct(")");
            }
        }
        return a;
    }

    Rule rule(int occurrence_index, bool allow_dist) {
        Rule r;
        r.occurrence_index = occurrence_index;
        r.span = peek().span;
        r.head = atom(allow_dist);
        expect_punct(":-");
        do {
            r.body.push_back(atom(/*allow_dist=*/false));
        } while (accept_punct(","));
        expect_punct(".");
        return r;
    }

    Fact ground_atom() {
        Fact f;
        f.relation = ident();
        if (accept_punct("(")) {
            if (!accept_punct(")")) {
                do {
                    f.args.push_back(constant());
                } while (accept_punct(","));
                expect_punct(")");
            }
        }
        return f;
    }

    Instance world_block() {
        Instance w;
        expect_punct("{");
        while (!accept_punct("}")) w.insert(ground_atom());
        return w;
    }

    std::vector<Token> tokens_;
    std::size_t idx_ = 0;
};

}  // namespace

Program parse_program(const std::string& source, const std::string& filename) {
    return Parser(source, filename).program();
}

Instance parse_facts(const std::string& source, const std::string& filename) {
    return Parser(source, filename).facts();
}

Constraint parse_constraint(const std::string& source, const std::string& filename) {
    return Parser(source, filename).constraint();
}

InputPdb parse_pdb(const std::string& source, const std::string& filename) {
    return Parser(source, filename).pdb();
}

ParsedDistribution parse_distribution(const std::string& source,
                                      const std::string& filename) {
    return Parser(source, filename).distribution();
}

// --- printing -----------------------------------------------------------

std::string term_str(const Term& term) {
    if (term.is_const()) return term.as_const().str();
    if (term.is_var()) return term.as_var();
    const DistCall& call = term.as_dist();
    std::string out = call.name + "[";
    for (std::size_t i = 0; i < call.params.size(); ++i) {
        if (i) out += ", ";
        out += term_str(call.params[i]);
    }
    return out + "]";
}

std::string atom_str(const Atom& atom) {
    if (atom.args.empty()) return atom.relation;
    std::string out = atom.relation + "(";
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
        if (i) out += ", ";
        out += term_str(atom.args[i]);
    }
    return out + ")";
}

std::string rule_str(const Rule& rule) {
    std::string out = atom_str(rule.head) + " :- ";
    for (std::size_t i = 0; i < rule.body.size(); ++i) {
        if (i) out += ", ";
        out += atom_str(rule.body[i]);
    }
    return out + ".";
}

namespace {

std::string sort_name(DomainTag tag) {
    switch (tag) {
        case DomainTag::Sym: return "sym";
        case DomainTag::Int: return "int";
        case DomainTag::Real: return "real";
    }
    return "?";
}

std::string decl_str(const char* keyword, const RelationSymbol& rel) {
    std::string out = std::string(keyword) + " " + rel.name + "(";
    for (std::size_t i = 0; i < rel.arity(); ++i) {
        if (i) out += ", ";
        out += "a" + std::to_string(i) + ": " + sort_name(rel.domains[i]);
    }
    return out + ").";
}

}  // namespace

std::string program_str(const Program& program) {
    std::ostringstream os;
    for (const auto& [name, rel] : program.extensional)
        os << decl_str("extensional", rel) << "\n";
    for (const auto& [name, rel] : program.intensional)
        os << decl_str("intensional", rel) << "\n";
    for (const auto& [name, target] : program.dist_aliases)
        os << "alias " << name << " = " << target << ".\n";
    for (const Rule& rule : program.rules) os << rule_str(rule) << "\n";
    return os.str();
}

std::string existential_str(const ExistentialProgram& prog) {
    std::ostringstream os;
    for (const auto& [name, rel] : prog.schema) {
        const char* kw = rel.kind == RelationKind::Extensional ? "extensional"
                         : rel.kind == RelationKind::Intensional ? "intensional"
                                                                 : "auxiliary";
        os << decl_str(kw, rel) << "\n";
    }
    for (const ExistentialRule& rule : prog.rules) {
        Atom head = rule.head;
        if (rule.samples()) {
            os << "exists __z: ";
            head.args.push_back(Term::var("__z"));
        }
        Rule printable;
        printable.head = std::move(head);
        printable.body = rule.body;
        os << rule_str(printable) << "\n";
    }
    return os.str();
}

}  // namespace gdlog
