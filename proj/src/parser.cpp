#include "redip/parser.hpp"

#include "redip/errors.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <vector>

namespace redip {

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { ident, number, string, punct, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    SourceSpan at;
};

std::vector<Token> tokenize(std::string_view src) {
    static const char* const two_char[] = {":=", "+=", "--", "<=", ">=", "==", "!=", "&&", "||"};
    std::vector<Token> out;
    std::size_t line = 1;
    std::size_t col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        SourceSpan at{line, col};
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            out.push_back({Tok::ident, std::string(src.substr(i, j - i)), at});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j + 1 < src.size() && src[j] == '.' && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
                ++j;
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            }
            out.push_back({Tok::number, std::string(src.substr(i, j - i)), at});
            advance(j - i);
            continue;
        }
        if (c == '"') {
            std::size_t j = i + 1;
            while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
            if (j >= src.size() || src[j] != '"') throw SyntaxError("unterminated string literal", line, col);
            out.push_back({Tok::string, std::string(src.substr(i + 1, j - i - 1)), at});
            advance(j + 1 - i);
            continue;
        }
        std::string punct;
        for (const char* t : two_char)
            if (src.substr(i, 2) == t) punct = t;
        if (punct.empty()) {
            if (std::string_view("{}[]();,<>=%/*+!").find(c) == std::string_view::npos)
                throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
            punct = std::string(1, c);
        }
        out.push_back({Tok::punct, punct, at});
        advance(punct.size());
    }
    out.push_back({Tok::end, "", {line, col}});
    return out;
}

// ---------------------------------------------------------------------------
// Surface syntax, before desugaring

struct SurfaceGuard;
using SurfaceGuardPtr = std::shared_ptr<const SurfaceGuard>;

struct SurfaceGuard {
    struct Compare {
        std::string var;
        std::string op;
        std::uint64_t n;
    };
    struct Modulo {
        std::string var;
        std::uint64_t m;
        std::uint64_t n;
        bool negated;
    };
    struct Binary {
        bool is_and;
        SurfaceGuardPtr lhs, rhs;
    };
    struct Negation {
        SurfaceGuardPtr operand;
    };
    struct Constant {
        bool value;
    };
    std::variant<Compare, Modulo, Binary, Negation, Constant> node;
    SourceSpan at;
};

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Stmt {
    struct Skip {};
    /// var := constant + sum of coefficient * variable
    struct Assign {
        std::string var;
        std::uint64_t constant;
        std::vector<std::pair<std::string, std::uint64_t>> terms;
    };
    struct Core {
        Program::Node node;
    };
    struct Observe {
        SurfaceGuardPtr guard;
    };
    struct Choice {
        StmtPtr lhs;
        Rational p;
        StmtPtr rhs;
    };
    struct If {
        SurfaceGuardPtr guard;
        StmtPtr then_branch;
        StmtPtr else_branch;  // may be null
    };
    struct Block {
        std::vector<StmtPtr> body;
    };
    std::variant<Skip, Assign, Core, Observe, Choice, If, Block> node;
    SourceSpan at;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
public:
    Parser(std::string_view src, std::filesystem::path base_dir)
        : toks_(tokenize(src)), base_dir_(std::move(base_dir)) {}

    StmtPtr program() {
        SourceSpan at = peek().at;
        auto body = statements();
        if (peek().kind != Tok::end) fail("expected ';' or end of program");
        return make(Stmt::Block{std::move(body)}, at);
    }

    SurfaceGuardPtr guard_only() {
        auto g = guard();
        if (peek().kind != Tok::end) fail("unexpected input after guard");
        return g;
    }

    Alphabet& alphabet() { return alphabet_; }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::filesystem::path base_dir_;
    Alphabet alphabet_;

    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    const Token& next() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }
    bool is(const char* punct, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == Tok::punct && t.text == punct;
    }
    bool is_word(const char* word, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == Tok::ident && t.text == word;
    }
    bool accept(const char* punct) {
        if (!is(punct)) return false;
        next();
        return true;
    }
    [[noreturn]] void fail(const std::string& message) const { fail(message, peek()); }
    [[noreturn]] void fail(const std::string& message, const Token& t) const {
        std::string found = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
        throw SyntaxError(message + ", found " + found, t.at.line, t.at.column);
    }
    void expect(const char* punct) {
        if (!accept(punct)) fail(std::string("expected '") + punct + "'");
    }

    static StmtPtr make(decltype(Stmt::node) node, SourceSpan at) {
        return std::make_shared<const Stmt>(Stmt{std::move(node), at});
    }

    static bool is_keyword(const std::string& word) {
        static const char* const keywords[] = {"skip", "if", "else", "observe", "and", "or", "not", "true", "false", "iid"};
        for (const char* k : keywords)
            if (word == k) return true;
        return false;
    }

    std::string variable() {
        const Token& t = peek();
        if (t.kind != Tok::ident || is_keyword(t.text)) fail("expected a variable");
        next();
        alphabet_.add(t.text);
        return t.text;
    }

    std::uint64_t natural() {
        const Token& t = peek();
        if (t.kind != Tok::number || t.text.find('.') != std::string::npos) fail("expected a natural number");
        next();
        try {
            return std::stoull(t.text);
        } catch (const std::out_of_range&) {
            throw SyntaxError("number " + t.text + " is too large", t.at.line, t.at.column);
        }
    }

    Rational probability() {
        const Token& t = peek();
        if (t.kind != Tok::number) fail("expected a probability");
        next();
        std::string text = t.text;
        if (accept("/")) {
            const Token& d = peek();
            if (d.kind != Tok::number) fail("expected a denominator");
            next();
            text += "/" + d.text;
        }
        Rational p;
        try {
            p = parse_rational(text);
        } catch (const Error& e) {
            throw SyntaxError(e.what(), t.at.line, t.at.column);
        }
        if (p > 1) throw ProbabilityRangeError("probability " + text + " is not in [0,1]", t.at.line, t.at.column);
        return p;
    }

    std::vector<StmtPtr> statements() {
        std::vector<StmtPtr> out;
        if (is("}") || peek().kind == Tok::end) return out;
        out.push_back(statement());
        while (accept(";")) {
            if (is("}") || peek().kind == Tok::end) break;
            out.push_back(statement());
        }
        return out;
    }

    StmtPtr block() {
        SourceSpan at = peek().at;
        expect("{");
        auto body = statements();
        expect("}");
        return make(Stmt::Block{std::move(body)}, at);
    }

    StmtPtr statement() {
        SourceSpan at = peek().at;
        if (is("{")) {
            StmtPtr lhs = block();
            if (!accept("[")) return lhs;
            Rational p = probability();
            expect("]");
            StmtPtr rhs = block();
            return make(Stmt::Choice{lhs, p, rhs}, at);
        }
        if (is_word("skip")) {
            next();
            return make(Stmt::Skip{}, at);
        }
        if (is_word("observe")) {
            next();
            expect("(");
            auto g = guard();
            expect(")");
            return make(Stmt::Observe{g}, at);
        }
        if (is_word("if")) {
            next();
            expect("(");
            auto g = guard();
            expect(")");
            StmtPtr then_branch = block();
            StmtPtr else_branch;
            if (is_word("else")) {
                next();
                else_branch = block();
            }
            return make(Stmt::If{g, then_branch, else_branch}, at);
        }
        if (peek().kind != Tok::ident || is_keyword(peek().text)) fail("expected a statement");
        std::string var = variable();
        if (accept(":=")) return make(linear_expression(var), at);
        if (accept("--")) return make(Stmt::Core{Decr{var}}, at);
        if (accept("+=")) return make(Stmt::Core{increment(var)}, at);
        fail("expected ':=', '+=' or '--' after variable");
    }

    Stmt::Assign linear_expression(const std::string& var) {
        Stmt::Assign a{var, 0, {}};
        std::map<std::string, std::uint64_t> index;
        auto add_term = [&](const std::string& v, std::uint64_t c) {
            auto [it, inserted] = index.try_emplace(v, a.terms.size());
            if (inserted)
                a.terms.emplace_back(v, c);
            else
                a.terms[it->second].second += c;
        };
        do {
            if (peek().kind == Tok::number) {
                std::uint64_t n = natural();
                accept("*");
                if (peek().kind == Tok::ident && !is_keyword(peek().text))
                    add_term(variable(), n);
                else
                    a.constant += n;
            } else {
                add_term(variable(), 1);
            }
        } while (accept("+"));
        return a;
    }

    Program::Node increment(const std::string& var) {
        const Token& t = peek();
        if (t.kind == Tok::number) return IncrConst{var, natural()};
        if (t.kind != Tok::ident) fail("expected a constant, variable or distribution");
        if (!is("(", 1)) return IncrVar{var, variable()};
        if (t.text == "iid") {
            next();
            expect("(");
            DistSpec d = distribution();
            expect(",");
            std::string count = variable();
            expect(")");
            return IncrIid{var, d, count};
        }
        return IncrDist{var, distribution()};
    }

    DistSpec distribution() {
        const Token& name = peek();
        if (name.kind != Tok::ident) fail("expected a distribution");
        next();
        expect("(");
        DistSpec d;
        const std::string& n = name.text;
        if (n == "geometric" || n == "geom") {
            d = Geometric{probability()};
        } else if (n == "bernoulli" || n == "bern") {
            d = Bernoulli{probability()};
        } else if (n == "dirac") {
            d = Dirac{natural()};
        } else if (n == "uniform" || n == "unif") {
            d = Uniform{natural()};
        } else if (n == "binomial" || n == "binom") {
            std::uint64_t k = natural();
            expect(",");
            d = Binomial{k, probability()};
        } else if (n == "negbinomial" || n == "negbinom") {
            std::uint64_t k = natural();
            expect(",");
            d = NegBinomial{k, probability()};
        } else if (n == "custom") {
            const Token& path = peek();
            if (path.kind != Tok::string) fail("expected a quoted file name");
            next();
            std::filesystem::path p(path.text);
            if (p.is_relative() && !base_dir_.empty()) p = base_dir_ / p;
            d = Custom{p.string()};
        } else {
            throw SyntaxError("unknown distribution '" + n + "'", name.at.line, name.at.column);
        }
        expect(")");
        try {
            check_parameters(d);
        } catch (const InvalidParameter& e) {
            throw SyntaxError(e.what(), name.at.line, name.at.column);
        }
        return d;
    }

    static SurfaceGuardPtr make_guard(decltype(SurfaceGuard::node) node, SourceSpan at) {
        return std::make_shared<const SurfaceGuard>(SurfaceGuard{std::move(node), at});
    }

    SurfaceGuardPtr guard() {
        SourceSpan at = peek().at;
        auto lhs = conjunction();
        while (is_word("or") || is("||")) {
            next();
            lhs = make_guard(SurfaceGuard::Binary{false, lhs, conjunction()}, at);
        }
        return lhs;
    }

    SurfaceGuardPtr conjunction() {
        SourceSpan at = peek().at;
        auto lhs = unary();
        while (is_word("and") || is("&&")) {
            next();
            lhs = make_guard(SurfaceGuard::Binary{true, lhs, unary()}, at);
        }
        return lhs;
    }

    SurfaceGuardPtr unary() {
        SourceSpan at = peek().at;
        if (is_word("not") || is("!")) {
            next();
            return make_guard(SurfaceGuard::Negation{unary()}, at);
        }
        if (accept("(")) {
            auto g = guard();
            expect(")");
            return g;
        }
        if (is_word("true") || is_word("false")) {
            bool value = next().text == "true";
            return make_guard(SurfaceGuard::Constant{value}, at);
        }
        std::string var = variable();
        if (accept("%")) {
            const Token& mtok = peek();
            std::uint64_t m = natural();
            bool negated = false;
            if (accept("!="))
                negated = true;
            else if (!accept("==") && !accept("="))
                fail("expected '==' or '!=' after modulus");
            std::uint64_t n = natural();
            if (m <= n)
                throw GuardConstraintError("congruence requires modulus > residue, got " + std::to_string(m) +
                                               " <= " + std::to_string(n),
                                           mtok.at.line, mtok.at.column);
            return make_guard(SurfaceGuard::Modulo{var, m, n, negated}, at);
        }
        for (const char* op : {"<", "<=", "==", "=", "!=", ">", ">="}) {
            if (accept(op)) return make_guard(SurfaceGuard::Compare{var, op, natural()}, at);
        }
        fail("expected a comparison operator");
    }
};

// ---------------------------------------------------------------------------
// Desugaring

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

class Desugarer {
public:
    explicit Desugarer(const Alphabet& alphabet) : alphabet_(alphabet) {}

    Guard guard(const SurfaceGuard& g) const {
        return std::visit(overloaded{
                              [](const SurfaceGuard::Compare& c) {
                                  if (c.op == "<") return less_than(c.var, c.n);
                                  if (c.op == "<=") return at_most(c.var, c.n);
                                  if (c.op == "==" || c.op == "=") return equal_to(c.var, c.n);
                                  if (c.op == "!=") return not_equal_to(c.var, c.n);
                                  if (c.op == ">") return greater_than(c.var, c.n);
                                  return at_least(c.var, c.n);
                              },
                              [](const SurfaceGuard::Modulo& m) {
                                  Guard atom = mod_eq(m.var, m.m, m.n);
                                  return m.negated ? !atom : atom;
                              },
                              [&](const SurfaceGuard::Binary& b) {
                                  return b.is_and ? guard(*b.lhs) && guard(*b.rhs) : guard(*b.lhs) || guard(*b.rhs);
                              },
                              [&](const SurfaceGuard::Negation& n) { return !guard(*n.operand); },
                              [&](const SurfaceGuard::Constant& c) {
                                  return c.value ? guard_true(alphabet_) : guard_false(alphabet_);
                              },
                          },
                          g.node);
    }

    ProgramPtr statement(const Stmt& s) const {
        return std::visit(
            overloaded{
                [&](const Stmt::Skip&) { return skip(s.at); },
                [&](const Stmt::Assign& a) { return assign(a, s.at); },
                [&](const Stmt::Core& c) { return make_program(c.node, s.at); },
                [&](const Stmt::Observe& o) { return make_program(Observe{guard(*o.guard)}, s.at); },
                [&](const Stmt::Choice& c) {
                    return make_program(Choice{statement(*c.lhs), c.p, statement(*c.rhs)}, s.at);
                },
                [&](const Stmt::If& i) {
                    ProgramPtr else_branch = i.else_branch ? statement(*i.else_branch) : skip(s.at);
                    return make_program(IfElse{guard(*i.guard), statement(*i.then_branch), else_branch}, s.at);
                },
                [&](const Stmt::Block& b) {
                    std::vector<ProgramPtr> parts;
                    for (const auto& child : b.body) parts.push_back(statement(*child));
                    return sequence(parts, s.at);
                },
            },
            s.node);
    }

private:
    const Alphabet& alphabet_;

    ProgramPtr skip(SourceSpan at) const { return make_program(IncrConst{alphabet_.name(0), 0}, at); }

    ProgramPtr sequence(const std::vector<ProgramPtr>& parts, SourceSpan at) const {
        if (parts.empty()) return skip(at);
        ProgramPtr out = parts.back();
        for (std::size_t i = parts.size() - 1; i-- > 0;) out = make_seq(parts[i], out, parts[i]->span);
        return out;
    }

    // x := c + a1*y1 + ... expands to x := 0 (unless x occurs on the right),
    // x += c and a_i copies of x += y_i.
    ProgramPtr assign(const Stmt::Assign& a, SourceSpan at) const {
        std::vector<ProgramPtr> parts;
        std::uint64_t self = 0;
        for (const auto& [v, c] : a.terms)
            if (v == a.var) self = c;
        if (self > 1)
            throw SyntaxError("assignment to " + a.var + " may use " + a.var + " with coefficient at most 1",
                              at.line, at.column);
        if (self == 0) parts.push_back(make_program(SetZero{a.var}, at));
        if (a.constant > 0) parts.push_back(make_program(IncrConst{a.var, a.constant}, at));
        for (const auto& [v, c] : a.terms) {
            if (v == a.var) continue;
            for (std::uint64_t k = 0; k < c; ++k) parts.push_back(make_program(IncrVar{a.var, v}, at));
        }
        if (parts.empty()) parts.push_back(make_program(IncrConst{a.var, 0}, at));
        return sequence(parts, at);
    }
};

Alphabet with_default(Alphabet a) {
    if (a.empty()) a.add("x");
    return a;
}

}  // namespace

ParsedProgram parse(std::string_view source, const std::filesystem::path& base_dir) {
    Parser parser(source, base_dir);
    StmtPtr surface = parser.program();
    Alphabet alphabet = with_default(parser.alphabet());
    return {Desugarer(alphabet).statement(*surface), alphabet};
}

Guard parse_guard(std::string_view text, const Alphabet& alphabet) {
    Parser parser(text, {});
    SurfaceGuardPtr surface = parser.guard_only();
    for (const auto& name : parser.alphabet().names())
        if (!alphabet.contains(name)) throw UnknownVariable("unknown variable '" + name + "' in guard");
    return Desugarer(alphabet).guard(*surface);
}

}  // namespace redip
