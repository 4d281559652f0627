#pragma once

#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "alg/error.hpp"
#include "alg/quote.hpp"
#include "alg/term.hpp"

namespace alg {

// Infix surface grammar shared by the CLI subcommands:
//   expr   := mul ('+' mul)*
//   mul    := atom ('*' atom)*
//   atom   := '0' | '1' | identifier | '(' expr ')'
// `*` binds tighter than `+`; both associate to the left.

struct SurfaceExpr {
    enum Tag { Zero, One, Var, Add, Mul } tag = One;
    std::string name;  // Var
    std::vector<SurfaceExpr> args;
};

namespace detail {

class SurfaceParser {
  public:
    explicit SurfaceParser(const std::string& text) : text_(text) {}

    SurfaceExpr parse() {
        SurfaceExpr e = expr();
        skip_ws();
        if (pos_ < text_.size()) fail("end of input");
        return e;
    }

  private:
    SurfaceExpr expr() {
        SurfaceExpr e = mul();
        while (peek() == '+') {
            advance();
            SurfaceExpr r = mul();
            SurfaceExpr n;
            n.tag = SurfaceExpr::Add;
            n.args = {std::move(e), std::move(r)};
            e = std::move(n);
        }
        return e;
    }

    SurfaceExpr mul() {
        SurfaceExpr e = atom();
        while (peek() == '*') {
            advance();
            SurfaceExpr r = atom();
            SurfaceExpr n;
            n.tag = SurfaceExpr::Mul;
            n.args = {std::move(e), std::move(r)};
            e = std::move(n);
        }
        return e;
    }

    SurfaceExpr atom() {
        char c = peek();
        if (c == '0') {
            advance();
            SurfaceExpr e;
            e.tag = SurfaceExpr::Zero;
            return e;
        }
        if (c == '1') {
            advance();
            return {};
        }
        if (c == '(') {
            advance();
            SurfaceExpr e = expr();
            if (peek() != ')') fail("`)`");
            advance();
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            SurfaceExpr e;
            e.tag = SurfaceExpr::Var;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                e.name += text_[pos_++];
            return e;
        }
        fail("`0`, `1`, an identifier, or `(`");
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void advance() { ++pos_; }

    void skip_ws() {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n')) {
            if (text_[pos_] == '\n') {
                ++line_;
                col_base_ = pos_ + 1;
            }
            ++pos_;
        }
    }

    [[noreturn]] void fail(const std::string& expected) {
        std::string got = pos_ < text_.size() ? "`" + std::string(1, text_[pos_]) + "`"
                                              : "end of input";
        throw Error(Errc::SyntaxError, std::to_string(line_) + ":" +
                                           std::to_string(pos_ - col_base_ + 1) + ": expected " +
                                           expected + ", got " + got);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_base_ = 0;
};

}  // namespace detail

inline SurfaceExpr parse_surface(const std::string& text) {
    return detail::SurfaceParser(text).parse();
}

// Canonical print: `*` tight, `+` spaced, parentheses only where precedence
// demands them. parse(print(e)) rebuilds e.
inline std::string surface_to_string(const SurfaceExpr& e) {
    switch (e.tag) {
        case SurfaceExpr::Zero: return "0";
        case SurfaceExpr::One: return "1";
        case SurfaceExpr::Var: return e.name;
        case SurfaceExpr::Add:
            return surface_to_string(e.args[0]) + " + " + surface_to_string(e.args[1]);
        default: {
            auto part = [](const SurfaceExpr& c) {
                std::string s = surface_to_string(c);
                return c.tag == SurfaceExpr::Add ? "(" + s + ")" : s;
            };
            return part(e.args[0]) + "*" + part(e.args[1]);
        }
    }
}

// Lowers to a Term over the theory's signature; identifiers become variables
// numbered by first appearance (recorded in `vars`). Monoid theories use
// op/unit and reject `+`/`0`.
inline Term surface_to_term(const SurfaceExpr& e, const std::string& theory,
                            std::map<std::string, int>& vars,
                            std::vector<std::string>& var_names) {
    const bool monoid = (theory == "monoid" || theory == "comm_monoid");
    switch (e.tag) {
        case SurfaceExpr::Zero:
            if (monoid) throw Error(Errc::UnknownOp, "`0` has no meaning in theory " + theory);
            return Term::app("zero");
        case SurfaceExpr::One: return Term::app(monoid ? "unit" : "one");
        case SurfaceExpr::Var: {
            auto [it, fresh] = vars.try_emplace(e.name, static_cast<int>(vars.size()));
            if (fresh) var_names.push_back(e.name);
            return Term::v(it->second);
        }
        case SurfaceExpr::Add: {
            if (monoid) throw Error(Errc::UnknownOp, "`+` has no meaning in theory " + theory);
            return Term::app("plus", {surface_to_term(e.args[0], theory, vars, var_names),
                                      surface_to_term(e.args[1], theory, vars, var_names)});
        }
        default:
            return Term::app(monoid ? "op" : "mult",
                             {surface_to_term(e.args[0], theory, vars, var_names),
                              surface_to_term(e.args[1], theory, vars, var_names)});
    }
}

// Lowers to a host expression for quoting; identifiers become atoms.
// The grammar's `+`/`0` have no monoid meaning and are rejected.
inline HostExpr surface_to_host(const SurfaceExpr& e) {
    switch (e.tag) {
        case SurfaceExpr::Zero:
            throw Error(Errc::UnknownOp, "`0` cannot be quoted (monoid fragment only)");
        case SurfaceExpr::One: return hone();
        case SurfaceExpr::Var: return hatom(e.name);
        case SurfaceExpr::Add:
            throw Error(Errc::UnknownOp, "`+` cannot be quoted (monoid fragment only)");
        default: return hmult(surface_to_host(e.args[0]), surface_to_host(e.args[1]));
    }
}

}  // namespace alg
