#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "alg/error.hpp"

namespace alg {

// Sorted arity of an operation symbol: argument sorts (possibly empty) and a
// result sort. Mirrors a non-empty sort list whose last element is the result.
struct OpType {
    std::vector<std::string> args;
    std::string result;

    bool operator==(const OpType&) const = default;
};

// A multisorted signature: sort names plus operation symbols with arities.
struct Signature {
    std::vector<std::string> sorts;
    std::map<std::string, OpType> ops;

    bool operator==(const Signature&) const = default;

    bool has_sort(const std::string& s) const {
        return std::find(sorts.begin(), sorts.end(), s) != sorts.end();
    }

    const OpType& op_type(const std::string& sym) const {
        auto it = ops.find(sym);
        if (it == ops.end()) throw Error(Errc::UnknownOp, sym);
        return it->second;
    }
};

// Variable context: sorts of variables, indexed densely from 0.
struct VarContext {
    std::vector<std::string> sorts;

    bool operator==(const VarContext&) const = default;

    std::size_t size() const { return sorts.size(); }

    const std::string& sort_of(int index) const {
        if (index < 0 || static_cast<std::size_t>(index) >= sorts.size())
            throw Error(Errc::UnknownVar, "variable " + std::to_string(index));
        return sorts[index];
    }
};

// Immutable term over a signature: Var(index) or App(op, args). The `sort`
// annotation is empty on raw terms and filled in by validate_term.
struct Term {
    bool is_var = false;
    int var = -1;
    std::string op;
    std::vector<Term> args;
    std::string sort;

    static Term v(int index) {
        Term t;
        t.is_var = true;
        t.var = index;
        return t;
    }

    static Term app(std::string sym, std::vector<Term> as = {}) {
        Term t;
        t.op = std::move(sym);
        t.args = std::move(as);
        return t;
    }

    // Structural equality, annotations ignored.
    bool same(const Term& o) const {
        if (is_var != o.is_var) return false;
        if (is_var) return var == o.var;
        if (op != o.op || args.size() != o.args.size()) return false;
        for (std::size_t i = 0; i < args.size(); ++i)
            if (!args[i].same(o.args[i])) return false;
        return true;
    }
};

// An equational entailment: premises and a conclusion over a shared context.
// Laws of built-in theories have empty premise lists.
struct Entailment {
    VarContext ctx;
    std::vector<std::pair<Term, Term>> premises;
    std::pair<Term, Term> conclusion;
    std::string name;  // optional label, used in reports
};

namespace detail {

inline Term validate_at(const Signature& sig, const VarContext& ctx, const Term& t,
                        const std::string& path) {
    if (t.is_var) {
        if (t.var < 0 || static_cast<std::size_t>(t.var) >= ctx.size())
            throw Error(Errc::UnknownVar, "variable " + std::to_string(t.var) + " at " + path);
        Term out = t;
        out.sort = ctx.sorts[t.var];
        return out;
    }
    auto it = sig.ops.find(t.op);
    if (it == sig.ops.end()) throw Error(Errc::UnknownOp, t.op + " at " + path);
    const OpType& ty = it->second;
    if (ty.args.size() != t.args.size())
        throw Error(Errc::ArityMismatch, t.op + " expects " + std::to_string(ty.args.size()) +
                                             " arguments, got " + std::to_string(t.args.size()) +
                                             " at " + path);
    Term out = t;
    for (std::size_t i = 0; i < t.args.size(); ++i) {
        std::string child = path + "." + std::to_string(i);
        out.args[i] = validate_at(sig, ctx, t.args[i], child);
        if (out.args[i].sort != ty.args[i])
            throw Error(Errc::SortMismatch, "argument " + std::to_string(i) + " of " + t.op +
                                                " has sort " + out.args[i].sort + ", expected " +
                                                ty.args[i] + " at " + child);
    }
    out.sort = ty.result;
    return out;
}

}  // namespace detail

// Checks well-sortedness and returns a sort-annotated copy. Idempotent on
// already-validated terms.
inline Term validate_term(const Signature& sig, const VarContext& ctx, const Term& t) {
    return detail::validate_at(sig, ctx, t, "root");
}

inline void collect_free_vars(const Term& t, std::set<int>& out) {
    if (t.is_var) {
        out.insert(t.var);
        return;
    }
    for (const Term& a : t.args) collect_free_vars(a, out);
}

inline std::set<int> free_vars(const Term& t) {
    std::set<int> out;
    collect_free_vars(t, out);
    return out;
}

// Structure-preserving variable renaming.
template <typename Rename>
Term map_vars(const Term& t, Rename&& rename) {
    if (t.is_var) {
        Term out = t;
        out.var = rename(t.var);
        return out;
    }
    Term out = t;
    for (Term& a : out.args) a = map_vars(a, rename);
    return out;
}

// --- S-expression serialization: (mult (var 0) one) ---------------------

inline void term_to_sexpr(const Term& t, std::string& out) {
    if (t.is_var) {
        out += "(var " + std::to_string(t.var) + ")";
        return;
    }
    if (t.args.empty()) {
        out += t.op;
        return;
    }
    out += "(" + t.op;
    for (const Term& a : t.args) {
        out += " ";
        term_to_sexpr(a, out);
    }
    out += ")";
}

inline std::string term_to_sexpr(const Term& t) {
    std::string out;
    term_to_sexpr(t, out);
    return out;
}

namespace detail {

inline void skip_ws(const std::string& s, std::size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
}

inline std::string read_symbol(const std::string& s, std::size_t& i) {
    std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\n' && s[i] != '\r' &&
           s[i] != '(' && s[i] != ')')
        ++i;
    if (start == i) throw Error(Errc::SyntaxError, "expected symbol at offset " + std::to_string(i));
    return s.substr(start, i - start);
}

inline Term parse_sexpr_at(const std::string& s, std::size_t& i) {
    skip_ws(s, i);
    if (i >= s.size()) throw Error(Errc::SyntaxError, "unexpected end of input");
    if (s[i] != '(') return Term::app(read_symbol(s, i));
    ++i;  // '('
    skip_ws(s, i);
    std::string head = read_symbol(s, i);
    std::vector<Term> args;
    bool is_var = (head == "var");
    while (true) {
        skip_ws(s, i);
        if (i >= s.size()) throw Error(Errc::SyntaxError, "missing ')'");
        if (s[i] == ')') {
            ++i;
            break;
        }
        args.push_back(parse_sexpr_at(s, i));
    }
    if (is_var) {
        if (args.size() != 1 || args[0].is_var || !args[0].args.empty())
            throw Error(Errc::SyntaxError, "var takes one index");
        return Term::v(std::stoi(args[0].op));
    }
    return Term::app(head, std::move(args));
}

}  // namespace detail

inline Term term_from_sexpr(const std::string& s) {
    std::size_t i = 0;
    Term t = detail::parse_sexpr_at(s, i);
    detail::skip_ws(s, i);
    if (i != s.size()) throw Error(Errc::SyntaxError, "trailing input at offset " + std::to_string(i));
    return t;
}

}  // namespace alg
