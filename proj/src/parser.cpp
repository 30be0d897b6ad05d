#include "setlab/parser.hpp"

#include <cctype>

namespace setlab {

namespace {

enum class Tok { Var, Name, NatLit, LParen, RParen, Comma, Dot, Tilde, Amp, Bar, Arrow, Eq, In, ForAll, Exists, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

struct Lexer {
    const std::string& src;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    explicit Lexer(const std::string& s) : src(s) {}

    [[noreturn]] void error(const std::string& msg, int l, int c) const {
        fail(Errc::syntax, msg + " at " + std::to_string(l) + ":" + std::to_string(c));
    }

    void advance() {
        if (src[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    Token next() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
            advance();
        int l = line, c = col;
        if (pos >= src.size())
            return {Tok::End, "", l, c};
        char ch = src[pos];
        switch (ch) {
        case '(': advance(); return {Tok::LParen, "(", l, c};
        case ')': advance(); return {Tok::RParen, ")", l, c};
        case ',': advance(); return {Tok::Comma, ",", l, c};
        case '.': advance(); return {Tok::Dot, ".", l, c};
        case '~': advance(); return {Tok::Tilde, "~", l, c};
        case '&': advance(); return {Tok::Amp, "&", l, c};
        case '|': advance(); return {Tok::Bar, "|", l, c};
        case '=': advance(); return {Tok::Eq, "=", l, c};
        case '-':
            advance();
            if (pos >= src.size() || src[pos] != '>')
                error("expected '>' after '-'", l, c);
            advance();
            return {Tok::Arrow, "->", l, c};
        case '#': {
            advance();
            std::string digits;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                digits += src[pos];
                advance();
            }
            if (digits.empty())
                error("expected digits after '#'", l, c);
            if (digits.size() > 1000)
                fail(Errc::resource_limit, "natural literal too long");
            return {Tok::NatLit, digits, l, c};
        }
        default:
            break;
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            std::string word;
            while (pos < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
                word += src[pos];
                advance();
            }
            if (word == "in")
                return {Tok::In, word, l, c};
            if (word == "forall")
                return {Tok::ForAll, word, l, c};
            if (word == "exists")
                return {Tok::Exists, word, l, c};
            if (std::islower(static_cast<unsigned char>(word[0])))
                return {Tok::Var, word, l, c};
            return {Tok::Name, word, l, c};
        }
        error(std::string("unexpected character '") + ch + "'", l, c);
    }
};

struct Parser {
    Lexer lex;
    Token tok;
    const MacroRegistry& reg;

    Parser(const std::string& text, const MacroRegistry& r) : lex(text), reg(r) { tok = lex.next(); }

    [[noreturn]] void error(const std::string& msg) const { lex.error(msg, tok.line, tok.col); }

    void eat(Tok k, const char* what) {
        if (tok.kind != k)
            error(std::string("expected ") + what);
        tok = lex.next();
    }

    std::string eat_var(const char* what) {
        if (tok.kind != Tok::Var)
            error(std::string("expected ") + what);
        std::string v = tok.text;
        tok = lex.next();
        return v;
    }

    FormulaPtr formula() {
        FormulaPtr a = disjunction();
        if (tok.kind == Tok::Arrow) {
            tok = lex.next();
            return Formula::implies(a, formula());
        }
        return a;
    }

    FormulaPtr disjunction() {
        FormulaPtr a = conjunction();
        while (tok.kind == Tok::Bar) {
            tok = lex.next();
            a = Formula::lor(a, conjunction());
        }
        return a;
    }

    FormulaPtr conjunction() {
        FormulaPtr a = unary();
        while (tok.kind == Tok::Amp) {
            tok = lex.next();
            a = Formula::land(a, unary());
        }
        return a;
    }

    FormulaPtr unary() {
        if (tok.kind == Tok::Tilde) {
            tok = lex.next();
            return Formula::lnot(unary());
        }
        if (tok.kind == Tok::ForAll || tok.kind == Tok::Exists)
            return quantifier();
        return primary();
    }

    FormulaPtr quantifier() {
        bool universal = tok.kind == Tok::ForAll;
        tok = lex.next();
        std::string v = eat_var("a variable after the quantifier");
        std::string bound;
        if (tok.kind == Tok::In) {
            tok = lex.next();
            bound = eat_var("a bound variable after 'in'");
        }
        eat(Tok::Dot, "'.' after the quantifier");
        FormulaPtr body = formula();
        if (bound.empty())
            return universal ? Formula::forall(v, body) : Formula::exists(v, body);
        return universal ? Formula::bforall(v, bound, body) : Formula::bexists(v, bound, body);
    }

    FormulaPtr primary() {
        if (tok.kind == Tok::LParen) {
            tok = lex.next();
            FormulaPtr f = formula();
            eat(Tok::RParen, "')'");
            return f;
        }
        if (tok.kind == Tok::Name)
            return macro_atom();
        if (tok.kind != Tok::Var)
            error("expected a formula");
        std::string v = tok.text;
        tok = lex.next();
        if (tok.kind == Tok::In) {
            tok = lex.next();
            return Formula::mem(v, eat_var("a variable after 'in'"));
        }
        if (tok.kind == Tok::Eq) {
            tok = lex.next();
            return Formula::eq(v, eat_var("a variable after '='"));
        }
        error("expected 'in' or '=' after a variable");
    }

    FormulaPtr macro_atom() {
        std::string name = tok.text;
        int l = tok.line, c = tok.col;
        tok = lex.next();
        if (!reg.known(name))
            lex.error("unknown macro or atom '" + name + "'", l, c);
        const MacroDef& def = reg.lookup(name);
        eat(Tok::LParen, "'(' after the macro name");
        std::vector<MacroArg> args;
        if (tok.kind != Tok::RParen) {
            for (;;) {
                if (tok.kind == Tok::Var) {
                    args.push_back(MacroArg::v(tok.text));
                    tok = lex.next();
                } else if (tok.kind == Tok::NatLit) {
                    args.push_back(MacroArg::n(Nat(tok.text)));
                    tok = lex.next();
                } else {
                    error("expected a variable or '#' literal argument");
                }
                if (tok.kind != Tok::Comma)
                    break;
                tok = lex.next();
            }
        }
        eat(Tok::RParen, "')'");
        if (args.size() != def.arity)
            lex.error("'" + name + "' expects " + std::to_string(def.arity) + " arguments, got " +
                          std::to_string(args.size()),
                      l, c);
        return def.interpreted ? Formula::atom(name, std::move(args)) : Formula::macro(name, std::move(args));
    }
};

} // namespace

FormulaPtr parse_formula(const std::string& text, const MacroRegistry& reg) {
    Parser p(text, reg);
    FormulaPtr f = p.formula();
    if (p.tok.kind != Tok::End)
        p.error("unexpected trailing input");
    return f;
}

} // namespace setlab
