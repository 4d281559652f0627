#pragma once

#include <algorithm>
#include <any>
#include <cstdint>
#include <optional>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "alg/error.hpp"

namespace alg {

// First-order pattern: a metavariable or a constructor application.
// Atoms are nullary constructors.
struct RTerm {
    bool is_meta = false;
    int meta = -1;
    std::string sym;
    std::vector<RTerm> args;

    static RTerm mv(int id) {
        RTerm t;
        t.is_meta = true;
        t.meta = id;
        return t;
    }

    static RTerm c(std::string sym, std::vector<RTerm> args = {}) {
        RTerm t;
        t.sym = std::move(sym);
        t.args = std::move(args);
        return t;
    }

    bool operator==(const RTerm& o) const {
        if (is_meta != o.is_meta) return false;
        if (is_meta) return meta == o.meta;
        return sym == o.sym && args == o.args;
    }
};

struct Goal {
    std::string pred;
    std::vector<RTerm> args;
};

using Subst = std::map<int, RTerm>;

namespace detail {

inline RTerm walk(const RTerm& t, const Subst& s) {
    const RTerm* cur = &t;
    while (cur->is_meta) {
        auto it = s.find(cur->meta);
        if (it == s.end()) break;
        cur = &it->second;
    }
    return *cur;
}

inline RTerm apply_subst(const RTerm& t, const Subst& s) {
    RTerm w = walk(t, s);
    if (w.is_meta) return w;
    for (RTerm& a : w.args) a = apply_subst(a, s);
    return w;
}

inline bool occurs(int meta, const RTerm& t, const Subst& s) {
    RTerm w = walk(t, s);
    if (w.is_meta) return w.meta == meta;
    for (const RTerm& a : w.args)
        if (occurs(meta, a, s)) return true;
    return false;
}

inline bool unify(const RTerm& a, const RTerm& b, Subst& s, std::uint64_t& steps) {
    ++steps;
    RTerm wa = walk(a, s), wb = walk(b, s);
    if (wa.is_meta && wb.is_meta && wa.meta == wb.meta) return true;
    if (wa.is_meta) {
        if (occurs(wa.meta, wb, s)) return false;
        s[wa.meta] = wb;
        return true;
    }
    if (wb.is_meta) {
        if (occurs(wb.meta, wa, s)) return false;
        s[wb.meta] = wa;
        return true;
    }
    if (wa.sym != wb.sym || wa.args.size() != wb.args.size()) return false;
    for (std::size_t i = 0; i < wa.args.size(); ++i)
        if (!unify(wa.args[i], wb.args[i], s, steps)) return false;
    return true;
}

inline void collect_metas(const RTerm& t, std::set<int>& out) {
    if (t.is_meta) {
        out.insert(t.meta);
        return;
    }
    for (const RTerm& a : t.args) collect_metas(a, out);
}

inline std::string rterm_to_string(const RTerm& t) {
    if (t.is_meta) return "?" + std::to_string(t.meta);
    if (t.args.empty()) return t.sym;
    std::string out = "(" + t.sym;
    for (const RTerm& a : t.args) out += " " + rterm_to_string(a);
    return out + ")";
}

}  // namespace detail

class RuleBase;

struct Derivation {
    std::string rule;
    int priority = 0;
    Goal resolved_goal;  // the goal with the final substitution applied
    std::vector<Derivation> children;
    std::any output;
    std::optional<RTerm> output_term;  // rule's symbolic output, instantiated
};

// Synthesizer: builds this rule's output from the instantiated head arguments
// and the subgoal outputs. Receives the rule base so composite deciders (e.g.
// bounded quantifiers) can run nested queries.
using Synth = std::function<std::any(const std::vector<RTerm>& head_args,
                                     const std::vector<std::any>& subgoal_outputs,
                                     const RuleBase& rules)>;

struct Rule {
    std::string name;
    Goal head;
    std::vector<Goal> subgoals;
    int priority = 50;  // lower = tried first
    Synth synth;        // may be null; output defaults to empty
    // Optional symbolic output: instantiated with the final substitution and
    // exposed on the derivation. Its metavariables must be bound by the head
    // or by a subgoal.
    std::optional<RTerm> output;
};

struct Limits {
    int depth = 64;
    std::uint64_t steps = 100000;
};

class RuleBase {
  public:
    // Appends the rule; order within equal priority is registration order.
    // A subgoal metavariable absent from the head counts as bound by that
    // subgoal's own solution, but the symbolic output must only use
    // metavariables bound by the head or some subgoal.
    void register_rule(Rule r) {
        std::set<int> bound;
        for (const RTerm& a : r.head.args) detail::collect_metas(a, bound);
        for (const Goal& g : r.subgoals)
            for (const RTerm& a : g.args) detail::collect_metas(a, bound);
        if (r.output) {
            std::set<int> used;
            detail::collect_metas(*r.output, used);
            for (int m : used)
                if (!bound.count(m))
                    throw Error(Errc::IllScopedRule, "rule " + r.name +
                                                         " output uses unbound metavariable ?" +
                                                         std::to_string(m));
        }
        rules_.push_back(std::move(r));
    }

    const std::vector<Rule>& rules() const { return rules_; }

  private:
    std::vector<Rule> rules_;
};

class Resolver {
  public:
    Resolver(const RuleBase& base, Limits limits = {}, std::vector<std::string>* trace = nullptr)
        : base_(base), limits_(limits), trace_(trace) {
        order_.resize(base.rules().size());
        for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            return base.rules()[a].priority < base.rules()[b].priority;
        });
    }

    Derivation resolve(const Goal& goal) {
        Subst subst;
        Derivation result;
        bool found = solve(goal, subst, 0, [&](Subst& s, Derivation& d) {
            result = d;
            finalize(result, s);
            return true;
        });
        if (!found) throw Error(Errc::NoSolution, goal.pred);
        return result;
    }

  private:
    using Cont = std::function<bool(Subst&, Derivation&)>;

    void finalize(Derivation& d, const Subst& s) {
        for (RTerm& a : d.resolved_goal.args) a = detail::apply_subst(a, s);
        if (d.output_term) d.output_term = detail::apply_subst(*d.output_term, s);
        for (Derivation& c : d.children) finalize(c, s);
    }

    void emit(const char* tag, int depth, const Goal& g, const Rule& r) {
        if (!trace_) return;
        trace_->push_back(std::string("[") + tag + "] " + std::to_string(depth) + " " + g.pred +
                          " " + r.name + " " + std::to_string(r.priority));
    }

    bool solve(const Goal& goal, Subst& subst, int depth, const Cont& cont) {
        if (depth > limits_.depth) throw Error(Errc::LimitExceeded, "depth limit exceeded");
        for (std::size_t ri : order_) {
            const Rule& rule = base_.rules()[ri];
            if (rule.head.pred != goal.pred || rule.head.args.size() != goal.args.size()) continue;
            emit("try", depth, goal, rule);
            // rename rule metavariables apart
            std::set<int> metas;
            for (const RTerm& a : rule.head.args) detail::collect_metas(a, metas);
            for (const Goal& g : rule.subgoals)
                for (const RTerm& a : g.args) detail::collect_metas(a, metas);
            std::map<int, int> renaming;
            for (int m : metas) renaming[m] = next_meta_++;
            auto rename = [&](const RTerm& t) { return rename_metas(t, renaming); };

            Subst saved = subst;
            bool head_ok = true;
            for (std::size_t i = 0; i < goal.args.size() && head_ok; ++i) {
                steps_used_++;
                if (steps_used_ > limits_.steps)
                    throw Error(Errc::LimitExceeded, "unification step limit exceeded");
                head_ok = detail::unify(goal.args[i], rename(rule.head.args[i]), subst, steps_used_);
            }
            if (head_ok) {
                std::vector<Goal> goals;
                for (const Goal& g : rule.subgoals) {
                    Goal gg;
                    gg.pred = g.pred;
                    for (const RTerm& a : g.args) gg.args.push_back(rename(a));
                    goals.push_back(std::move(gg));
                }
                std::vector<Derivation> children;
                bool done = solve_seq(goals, 0, subst, depth, children, [&](Subst& s) {
                    Derivation d;
                    d.rule = rule.name;
                    d.priority = rule.priority;
                    d.resolved_goal = goal;
                    d.children = children;
                    if (rule.output) d.output_term = detail::apply_subst(rename(*rule.output), s);
                    if (rule.synth) {
                        std::vector<RTerm> head_args;
                        for (const RTerm& a : goal.args) head_args.push_back(detail::apply_subst(a, s));
                        std::vector<std::any> outputs;
                        for (const Derivation& c : d.children) outputs.push_back(c.output);
                        d.output = rule.synth(head_args, outputs, base_);
                    }
                    emit("ok", depth, goal, rule);
                    return cont(s, d);
                });
                if (done) return true;
            }
            emit("fail", depth, goal, rule);
            subst = std::move(saved);
        }
        return false;
    }

    // Solves goals[i..] in order, backtracking across alternatives.
    bool solve_seq(const std::vector<Goal>& goals, std::size_t i, Subst& subst, int depth,
                   std::vector<Derivation>& children, const std::function<bool(Subst&)>& done) {
        if (i == goals.size()) return done(subst);
        return solve(goals[i], subst, depth + 1, [&](Subst& s, Derivation& d) {
            children.push_back(d);
            bool ok = solve_seq(goals, i + 1, s, depth, children, done);
            if (!ok) children.pop_back();
            return ok;
        });
    }

    static RTerm rename_metas(const RTerm& t, const std::map<int, int>& renaming) {
        if (t.is_meta) return RTerm::mv(renaming.at(t.meta));
        RTerm out = t;
        for (RTerm& a : out.args) a = rename_metas(a, renaming);
        return out;
    }

    const RuleBase& base_;
    Limits limits_;
    std::vector<std::string>* trace_;
    std::vector<std::size_t> order_;
    int next_meta_ = 1000000;
    std::uint64_t steps_used_ = 0;
};

inline Derivation resolve(const Goal& goal, const RuleBase& base, Limits limits = {},
                          std::vector<std::string>* trace = nullptr) {
    Resolver r(base, limits, trace);
    return r.resolve(goal);
}

// Deterministic structural serialization (outputs are opaque and omitted).
inline std::string derivation_to_string(const Derivation& d) {
    std::string out = "(" + d.rule + " " + std::to_string(d.priority) + " " + d.resolved_goal.pred;
    for (const RTerm& a : d.resolved_goal.args) out += " " + detail::rterm_to_string(a);
    for (const Derivation& c : d.children) out += " " + derivation_to_string(c);
    return out + ")";
}

}  // namespace alg
