#pragma once

#include <map>
#include <string>
#include <vector>

#include "alg/normal_form.hpp"
#include "alg/resolution.hpp"
#include "alg/term.hpp"

namespace alg {

// Reification of host-level monoid expressions into syntax. A host expression
// is an opaque tree of multiplications, units, and named atoms; quoting
// rebuilds it as a syntactic expression whose variables are keys into a heap
// of discovered atoms. Repeated atoms get the same key, so the quoted form is
// ready for free-model normalization. Atom identity is the token, never the
// value: the engine inspects the tree, it does not compare numbers.
//
// Heaps:      novars | (singlevar TOK) | (merge H H)
// Keys:       unit | (left K) | (right K)      — paths into a heap
// Quoted:     one | (mult E E) | (var K)
//
// Quote(V, HOST, N) reads: quoting HOST against already-known heap V discovers
// the new heap N; keys in the result address the sum heap (merge V N).

struct HostExpr {
    enum Tag { HOne, HMult, HAtom } tag = HOne;
    std::vector<HostExpr> args;
    std::string token;
    Int value = 0;  // only meaningful on atoms
};

inline HostExpr hone() { return {}; }
inline HostExpr hmult(HostExpr a, HostExpr b) {
    HostExpr e;
    e.tag = HostExpr::HMult;
    e.args = {std::move(a), std::move(b)};
    return e;
}
inline HostExpr hatom(std::string token, Int value = 0) {
    HostExpr e;
    e.tag = HostExpr::HAtom;
    e.token = std::move(token);
    e.value = std::move(value);
    return e;
}

// Quoted expression; variable keys are RTerms built from unit/left/right.
struct QExpr {
    enum Tag { QOne, QMult, QVar } tag = QOne;
    std::vector<QExpr> args;
    RTerm key;
};

inline RTerm novars() { return RTerm::c("novars"); }
inline RTerm singlevar(const std::string& token) {
    return RTerm::c("singlevar", {RTerm::c(token)});
}
inline RTerm merge(RTerm a, RTerm b) { return RTerm::c("merge", {std::move(a), std::move(b)}); }

namespace detail {

inline RTerm host_to_rterm(const HostExpr& e) {
    switch (e.tag) {
        case HostExpr::HOne: return RTerm::c("hone");
        case HostExpr::HMult:
            return RTerm::c("hmult", {host_to_rterm(e.args[0]), host_to_rterm(e.args[1])});
        default: return RTerm::c("hatom", {RTerm::c(e.token)});
    }
}

// Key embedding V+N -> V+(N+M): new-heap keys shift under a later merge.
inline RTerm shift_key(const RTerm& k) {
    if (k.sym == "left") return k;
    return RTerm::c("right", {RTerm::c("left", {k.args[0]})});
}

// Key reassociation (V+N)+M -> V+(N+M).
inline RTerm sum_assoc_key(const RTerm& k) {
    if (k.sym == "left") {
        const RTerm& inner = k.args[0];
        if (inner.sym == "left") return inner;
        return RTerm::c("right", {RTerm::c("left", {inner.args[0]})});
    }
    return RTerm::c("right", {RTerm::c("right", {k.args[0]})});
}

template <typename KeyFn>
QExpr map_keys(QExpr e, const KeyFn& f) {
    if (e.tag == QExpr::QVar) {
        e.key = f(e.key);
        return e;
    }
    for (QExpr& a : e.args) a = map_keys(std::move(a), f);
    return e;
}

}  // namespace detail

// The quoting rule base. Atom rules are ordered: reuse an existing heap slot
// (priority 8) before allocating a fresh one (priority 9); Lookup prefers the
// left branch of a merge because its rule is registered first.
inline RuleBase quote_rules() {
    RuleBase base;
    {
        Rule r;
        r.name = "lookup_single";
        r.head = {"Lookup", {RTerm::c("singlevar", {RTerm::mv(0)}), RTerm::mv(0), RTerm::c("unit")}};
        r.synth = [](const std::vector<RTerm>&, const std::vector<std::any>&, const RuleBase&) {
            return std::any(RTerm::c("unit"));
        };
        base.register_rule(std::move(r));
    }
    {
        Rule r;
        r.name = "lookup_left";
        r.head = {"Lookup",
                  {RTerm::c("merge", {RTerm::mv(0), RTerm::mv(1)}), RTerm::mv(2),
                   RTerm::c("left", {RTerm::mv(3)})}};
        r.subgoals = {{"Lookup", {RTerm::mv(0), RTerm::mv(2), RTerm::mv(3)}}};
        r.synth = [](const std::vector<RTerm>&, const std::vector<std::any>& outs, const RuleBase&) {
            return std::any(RTerm::c("left", {std::any_cast<RTerm>(outs[0])}));
        };
        base.register_rule(std::move(r));
    }
    {
        Rule r;
        r.name = "lookup_right";
        r.head = {"Lookup",
                  {RTerm::c("merge", {RTerm::mv(0), RTerm::mv(1)}), RTerm::mv(2),
                   RTerm::c("right", {RTerm::mv(3)})}};
        r.subgoals = {{"Lookup", {RTerm::mv(1), RTerm::mv(2), RTerm::mv(3)}}};
        r.synth = [](const std::vector<RTerm>&, const std::vector<std::any>& outs, const RuleBase&) {
            return std::any(RTerm::c("right", {std::any_cast<RTerm>(outs[0])}));
        };
        base.register_rule(std::move(r));
    }
    {
        Rule r;
        r.name = "quote_one";
        r.head = {"Quote", {RTerm::mv(0), RTerm::c("hone"), RTerm::c("novars")}};
        r.output = RTerm::c("novars");
        r.synth = [](const std::vector<RTerm>&, const std::vector<std::any>&, const RuleBase&) {
            return std::any(QExpr{});
        };
        base.register_rule(std::move(r));
    }
    {
        Rule r;
        r.name = "quote_mult";
        r.head = {"Quote",
                  {RTerm::mv(0), RTerm::c("hmult", {RTerm::mv(1), RTerm::mv(2)}),
                   RTerm::c("merge", {RTerm::mv(3), RTerm::mv(4)})}};
        r.subgoals = {
            {"Quote", {RTerm::mv(0), RTerm::mv(1), RTerm::mv(3)}},
            {"Quote", {RTerm::c("merge", {RTerm::mv(0), RTerm::mv(3)}), RTerm::mv(2), RTerm::mv(4)}}};
        r.output = RTerm::c("merge", {RTerm::mv(3), RTerm::mv(4)});
        r.synth = [](const std::vector<RTerm>&, const std::vector<std::any>& outs, const RuleBase&) {
            QExpr left = detail::map_keys(std::any_cast<QExpr>(outs[0]), detail::shift_key);
            QExpr right = detail::map_keys(std::any_cast<QExpr>(outs[1]), detail::sum_assoc_key);
            QExpr e;
            e.tag = QExpr::QMult;
            e.args = {std::move(left), std::move(right)};
            return std::any(std::move(e));
        };
        base.register_rule(std::move(r));
    }
    {
        Rule r;
        r.name = "quote_old_var";
        r.priority = 8;
        r.head = {"Quote", {RTerm::mv(0), RTerm::c("hatom", {RTerm::mv(1)}), RTerm::c("novars")}};
        r.subgoals = {{"Lookup", {RTerm::mv(0), RTerm::mv(1), RTerm::mv(2)}}};
        r.output = RTerm::c("novars");
        r.synth = [](const std::vector<RTerm>&, const std::vector<std::any>& outs, const RuleBase&) {
            QExpr e;
            e.tag = QExpr::QVar;
            e.key = RTerm::c("left", {std::any_cast<RTerm>(outs[0])});
            return std::any(std::move(e));
        };
        base.register_rule(std::move(r));
    }
    {
        Rule r;
        r.name = "quote_new_var";
        r.priority = 9;
        r.head = {"Quote",
                  {RTerm::mv(0), RTerm::c("hatom", {RTerm::mv(1)}),
                   RTerm::c("singlevar", {RTerm::mv(1)})}};
        r.output = RTerm::c("singlevar", {RTerm::mv(1)});
        r.synth = [](const std::vector<RTerm>&, const std::vector<std::any>&, const RuleBase&) {
            QExpr e;
            e.tag = QExpr::QVar;
            e.key = RTerm::c("right", {RTerm::c("unit")});
            return std::any(std::move(e));
        };
        base.register_rule(std::move(r));
    }
    return base;
}

// Resolves a key for the token inside a heap; NotFound on an absent token.
inline RTerm lookup_key(const RTerm& env, const std::string& token) {
    static const RuleBase base = quote_rules();
    try {
        Derivation d = resolve({"Lookup", {env, RTerm::c(token), RTerm::mv(0)}}, base);
        return std::any_cast<RTerm>(d.output);
    } catch (const Error& e) {
        if (e.code() == Errc::NoSolution) throw Error(Errc::NotFound, "token not in heap: " + token);
        throw;
    }
}

struct QuoteResult {
    RTerm heap;  // newly discovered variables
    RTerm env;   // (merge prior heap): what the expression's keys address
    QExpr expr;
    Derivation derivation;
};

inline QuoteResult quote_expr(const RTerm& prior, const HostExpr& host, Limits limits = {},
                              std::vector<std::string>* trace = nullptr) {
    static const RuleBase base = quote_rules();
    Goal goal{"Quote", {prior, detail::host_to_rterm(host), RTerm::mv(0)}};
    Derivation d = resolve(goal, base, limits, trace);
    QuoteResult out;
    out.heap = *d.output_term;
    out.env = merge(prior, out.heap);
    out.expr = std::any_cast<QExpr>(d.output);
    out.derivation = std::move(d);
    return out;
}

inline QuoteResult quote_expr(const HostExpr& host, Limits limits = {},
                              std::vector<std::string>* trace = nullptr) {
    return quote_expr(novars(), host, limits, trace);
}

// Follows a key through a heap to the token stored there.
inline std::string key_token(const RTerm& env, const RTerm& key) {
    if (key.sym == "unit") {
        if (env.sym != "singlevar") throw Error(Errc::InvalidKey, "key ends off an atom slot");
        return env.args[0].sym;
    }
    if (env.sym != "merge") throw Error(Errc::InvalidKey, "key descends into a leaf");
    if (key.sym == "left") return key_token(env.args[0], key.args[0]);
    if (key.sym == "right") return key_token(env.args[1], key.args[0]);
    throw Error(Errc::InvalidKey, "malformed key: " + detail::rterm_to_string(key));
}

// Token -> numeric value, collected from a host expression's atoms.
inline void collect_atom_values(const HostExpr& e, std::map<std::string, Int>& out) {
    if (e.tag == HostExpr::HAtom) out.emplace(e.token, e.value);
    for (const HostExpr& a : e.args) collect_atom_values(a, out);
}

inline Int eval_host(const HostExpr& e) {
    switch (e.tag) {
        case HostExpr::HOne: return 1;
        case HostExpr::HMult: return eval_host(e.args[0]) * eval_host(e.args[1]);
        default: return e.value;
    }
}

// Evaluates a quoted expression against a heap whose slots hold the values
// recorded for their tokens.
inline Int eval_env(const RTerm& env, const std::map<std::string, Int>& values, const QExpr& e) {
    switch (e.tag) {
        case QExpr::QOne: return 1;
        case QExpr::QMult:
            return eval_env(env, values, e.args[0]) * eval_env(env, values, e.args[1]);
        default: {
            std::string tok = key_token(env, e.key);
            auto it = values.find(tok);
            if (it == values.end()) throw Error(Errc::InvalidKey, "no value for token " + tok);
            return it->second;
        }
    }
}

// Converts a quoted expression into a monoid term; variables are numbered by
// first appearance of their token, shared across calls via `index`.
inline Term qexpr_to_term(const QExpr& e, const RTerm& env,
                          std::map<std::string, int>& index) {
    switch (e.tag) {
        case QExpr::QOne: return Term::app("unit");
        case QExpr::QMult:
            return Term::app("op", {qexpr_to_term(e.args[0], env, index),
                                    qexpr_to_term(e.args[1], env, index)});
        default: {
            std::string tok = key_token(env, e.key);
            auto [it, fresh] = index.try_emplace(tok, static_cast<int>(index.size()));
            (void)fresh;
            return Term::v(it->second);
        }
    }
}

// Both sides quoted into one shared heap; atoms common to both sides share
// their keys. The left expression is re-based under the final merge.
struct QuoteEqualityResult {
    RTerm env;  // (merge (merge novars HEAP_L) HEAP_R)
    QExpr lhs;
    QExpr rhs;
};

inline QuoteEqualityResult quote_equality_expr(const HostExpr& l, const HostExpr& r) {
    QuoteResult ql = quote_expr(novars(), l);
    QuoteResult qr = quote_expr(ql.env, r);
    QuoteEqualityResult out;
    out.env = qr.env;
    out.lhs = detail::map_keys(ql.expr, [](const RTerm& k) { return RTerm::c("left", {k}); });
    out.rhs = qr.expr;
    return out;
}

// Quote both sides against a shared heap, then decide the equation in the
// free monoid.
inline bool quote_equality(const HostExpr& lhs, const HostExpr& rhs) {
    QuoteEqualityResult q = quote_equality_expr(lhs, rhs);
    std::map<std::string, int> index;
    Term tl = qexpr_to_term(q.lhs, q.env, index);
    Term tr = qexpr_to_term(q.rhs, q.env, index);
    VarContext ctx;
    ctx.sorts.assign(index.size(), "num");
    return decide_free_eq("monoid", ctx, tl, tr);
}

// --- Printing ---------------------------------------------------------------

inline std::string heap_to_string(const RTerm& h) { return detail::rterm_to_string(h); }

inline std::string qexpr_to_string(const QExpr& e) {
    switch (e.tag) {
        case QExpr::QOne: return "one";
        case QExpr::QMult:
            return "(mult " + qexpr_to_string(e.args[0]) + " " + qexpr_to_string(e.args[1]) + ")";
        default: return "(var " + detail::rterm_to_string(e.key) + ")";
    }
}

inline std::string host_to_string(const HostExpr& e) {
    switch (e.tag) {
        case HostExpr::HOne: return "1";
        case HostExpr::HMult: {
            auto paren = [](const HostExpr& c) {
                std::string s = host_to_string(c);
                return c.tag == HostExpr::HMult ? "(" + s + ")" : s;
            };
            return paren(e.args[0]) + "*" + paren(e.args[1]);
        }
        default: return e.token;
    }
}

}  // namespace alg
