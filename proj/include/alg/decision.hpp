#pragma once

#include <functional>
#include <string>
#include <vector>

#include "alg/numbers.hpp"
#include "alg/resolution.hpp"

namespace alg {

// Decision goals carry a proposition term:
//   (eq IMPL L R) | (and P Q) | (or P Q) | (not P) | (forall VAR DOM P)
// where numeric expressions are (plus A B), (times A B), decimal literals,
// and quantified variable atoms; DOM is a cons/nil list of literals.
// Solving Decision(P) synthesizes an executable decider for P.

using DeciderFn = std::function<bool()>;
using EqFn = std::function<bool(const Value&, const Value&)>;

inline RTerm num_lit(std::uint64_t n) { return RTerm::c(std::to_string(n)); }
inline RTerm num_var(const std::string& name) { return RTerm::c(name); }
inline RTerm num_plus(RTerm a, RTerm b) { return RTerm::c("plus", {std::move(a), std::move(b)}); }
inline RTerm num_times(RTerm a, RTerm b) { return RTerm::c("times", {std::move(a), std::move(b)}); }

inline RTerm prop_eq(const std::string& impl, RTerm l, RTerm r) {
    return RTerm::c("eq", {RTerm::c(impl), std::move(l), std::move(r)});
}
inline RTerm prop_and(RTerm a, RTerm b) { return RTerm::c("and", {std::move(a), std::move(b)}); }
inline RTerm prop_or(RTerm a, RTerm b) { return RTerm::c("or", {std::move(a), std::move(b)}); }
inline RTerm prop_not(RTerm a) { return RTerm::c("not", {std::move(a)}); }

inline RTerm prop_forall(const std::string& var, const std::vector<std::uint64_t>& domain,
                         RTerm body) {
    RTerm dom = RTerm::c("nil");
    for (std::size_t i = domain.size(); i > 0; --i)
        dom = RTerm::c("cons", {num_lit(domain[i - 1]), dom});
    return RTerm::c("forall", {RTerm::c(var), std::move(dom), std::move(body)});
}

namespace detail {

inline RTerm substitute_atom(const RTerm& t, const std::string& name, const RTerm& with) {
    if (t.is_meta) return t;
    if (t.args.empty() && t.sym == name) return with;
    RTerm out = t;
    for (RTerm& a : out.args) a = substitute_atom(a, name, with);
    return out;
}

inline Value eval_num_expr(const RTerm& t, const NaturalsImpl& impl) {
    if (t.is_meta) throw Error(Errc::IllScopedRule, "numeric expression contains a metavariable");
    if (t.sym == "plus") return impl.add(eval_num_expr(t.args[0], impl), eval_num_expr(t.args[1], impl));
    if (t.sym == "times") return impl.mul(eval_num_expr(t.args[0], impl), eval_num_expr(t.args[1], impl));
    if (!t.args.empty() || t.sym.empty() || !std::isdigit(static_cast<unsigned char>(t.sym[0])))
        throw Error(Errc::SyntaxError, "not a numeric literal: " + t.sym);
    return impl.from_u64(std::stoull(t.sym));
}

}  // namespace detail

// Rule base with the Decision combinators plus one Decider rule per
// registered equality decider (specialized at priority 10, generic at 100).
inline RuleBase decision_rules() {
    RuleBase base;
    const NumericRegistry& reg = NumericRegistry::instance();

    for (const std::string& impl : {"peano", "binary", "closedterm", "intpair", "frac"}) {
        for (const DeciderEntry& entry : reg.deciders(impl)) {
            Rule r;
            r.name = entry.rule;
            r.priority = entry.priority;
            r.head = {"Decider", {RTerm::c(impl)}};
            r.synth = [fn = entry.fn](const std::vector<RTerm>&, const std::vector<std::any>&,
                                      const RuleBase&) { return std::any(EqFn(fn)); };
            base.register_rule(std::move(r));
        }
    }

    {
        Rule r;
        r.name = "decide_eq";
        r.head = {"Decision", {RTerm::c("eq", {RTerm::mv(0), RTerm::mv(1), RTerm::mv(2)})}};
        r.subgoals = {{"Decider", {RTerm::mv(0)}}};
        r.synth = [](const std::vector<RTerm>& head_args, const std::vector<std::any>& outs,
                     const RuleBase&) {
            const RTerm& prop = head_args[0];
            std::string impl_name = prop.args[0].sym;
            RTerm l = prop.args[1], r = prop.args[2];
            EqFn eq = std::any_cast<EqFn>(outs[0]);
            return std::any(DeciderFn([impl_name, l, r, eq] {
                const NaturalsImpl& impl = NumericRegistry::instance().naturals(impl_name);
                return eq(detail::eval_num_expr(l, impl), detail::eval_num_expr(r, impl));
            }));
        };
        base.register_rule(std::move(r));
    }
    {
        Rule r;
        r.name = "decide_conj";
        r.head = {"Decision", {RTerm::c("and", {RTerm::mv(0), RTerm::mv(1)})}};
        r.subgoals = {{"Decision", {RTerm::mv(0)}}, {"Decision", {RTerm::mv(1)}}};
        r.synth = [](const std::vector<RTerm>&, const std::vector<std::any>& outs, const RuleBase&) {
            auto p = std::any_cast<DeciderFn>(outs[0]);
            auto q = std::any_cast<DeciderFn>(outs[1]);
            return std::any(DeciderFn([p, q] { return p() && q(); }));
        };
        base.register_rule(std::move(r));
    }
    {
        Rule r;
        r.name = "decide_disj";
        r.head = {"Decision", {RTerm::c("or", {RTerm::mv(0), RTerm::mv(1)})}};
        r.subgoals = {{"Decision", {RTerm::mv(0)}}, {"Decision", {RTerm::mv(1)}}};
        r.synth = [](const std::vector<RTerm>&, const std::vector<std::any>& outs, const RuleBase&) {
            auto p = std::any_cast<DeciderFn>(outs[0]);
            auto q = std::any_cast<DeciderFn>(outs[1]);
            return std::any(DeciderFn([p, q] { return p() || q(); }));
        };
        base.register_rule(std::move(r));
    }
    {
        Rule r;
        r.name = "decide_neg";
        r.head = {"Decision", {RTerm::c("not", {RTerm::mv(0)})}};
        r.subgoals = {{"Decision", {RTerm::mv(0)}}};
        r.synth = [](const std::vector<RTerm>&, const std::vector<std::any>& outs, const RuleBase&) {
            auto p = std::any_cast<DeciderFn>(outs[0]);
            return std::any(DeciderFn([p] { return !p(); }));
        };
        base.register_rule(std::move(r));
    }
    {
        Rule r;
        r.name = "decide_forall";
        r.head = {"Decision",
                  {RTerm::c("forall", {RTerm::mv(0), RTerm::mv(1), RTerm::mv(2)})}};
        r.synth = [](const std::vector<RTerm>& head_args, const std::vector<std::any>&,
                     const RuleBase& rules) {
            const RTerm& prop = head_args[0];
            std::string var = prop.args[0].sym;
            RTerm dom = prop.args[1];
            RTerm body = prop.args[2];
            RuleBase rules_copy = rules;  // deciders may outlive the query
            return std::any(DeciderFn([var, dom, body, rules_copy] {
                RTerm cur = dom;
                while (cur.sym == "cons") {
                    RTerm inst = detail::substitute_atom(body, var, cur.args[0]);
                    Derivation d = alg::resolve({"Decision", {inst}}, rules_copy);
                    if (!std::any_cast<DeciderFn>(d.output)()) return false;
                    cur = cur.args[1];
                }
                return true;
            }));
        };
        base.register_rule(std::move(r));
    }
    return base;
}

// Resolves Decision(prop) and runs the synthesized decider.
inline bool run_decision(const RTerm& prop, const RuleBase& rules) {
    Derivation d = resolve(Goal{"Decision", {prop}}, rules);
    return std::any_cast<DeciderFn>(d.output)();
}

}  // namespace alg
