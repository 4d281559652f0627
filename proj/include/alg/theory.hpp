#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "alg/model.hpp"
#include "alg/term.hpp"

namespace alg {

// A signature plus a finite list of equational laws. Laws are a concrete
// list rather than a predicate, so theories are decidable and serializable.
struct EquationalTheory {
    std::string name;
    Signature sig;
    std::vector<Entailment> laws;
};

constexpr std::uint64_t kDefaultSeed = 0xA15EB;
constexpr std::size_t kDefaultSamples = 1000;

struct Strategy {
    enum Kind { Auto, Exhaustive, Sampled, Probes } kind = Auto;
    std::size_t samples = kDefaultSamples;
    std::uint64_t seed = kDefaultSeed;
    // Probes: explicit per-sort probe values, checked exhaustively as a grid.
    std::map<std::string, std::vector<Value>> probes;

    static Strategy exhaustive() { return {Exhaustive}; }
    static Strategy sampled(std::size_t n = kDefaultSamples, std::uint64_t seed = kDefaultSeed) {
        Strategy s;
        s.kind = Sampled;
        s.samples = n;
        s.seed = seed;
        return s;
    }
};

struct LawResult {
    std::string law;
    bool pass = true;
    std::string strategy;
    std::string counterexample;  // replayable description, empty on pass
};

struct VarietyReport {
    CheckResult algebra;  // propriety check, run first
    std::vector<LawResult> laws;

    bool all_pass() const {
        if (!algebra.ok) return false;
        for (const auto& l : laws)
            if (!l.pass) return false;
        return true;
    }
};

// --- Built-in theories ------------------------------------------------------

namespace detail {

inline Term tv(int i) { return Term::v(i); }

inline Entailment identity_law(std::string name, VarContext ctx, Term lhs, Term rhs) {
    Entailment e;
    e.name = std::move(name);
    e.ctx = std::move(ctx);
    e.conclusion = {std::move(lhs), std::move(rhs)};
    return e;
}

}  // namespace detail

inline Signature monoid_signature() {
    Signature sig;
    sig.sorts = {"num"};
    sig.ops["op"] = {{"num", "num"}, "num"};
    sig.ops["unit"] = {{}, "num"};
    return sig;
}

inline Signature semiring_signature(bool with_neg = false) {
    Signature sig;
    sig.sorts = {"num"};
    sig.ops["plus"] = {{"num", "num"}, "num"};
    sig.ops["mult"] = {{"num", "num"}, "num"};
    sig.ops["zero"] = {{}, "num"};
    sig.ops["one"] = {{}, "num"};
    if (with_neg) sig.ops["neg"] = {{"num"}, "num"};
    return sig;
}

inline EquationalTheory builtin_theory(const std::string& name) {
    using detail::identity_law;
    using detail::tv;
    auto A = [](std::string op, Term a, Term b) { return Term::app(std::move(op), {std::move(a), std::move(b)}); };
    VarContext c1{{"num"}}, c2{{"num", "num"}}, c3{{"num", "num", "num"}};

    EquationalTheory th;
    th.name = name;
    if (name == "monoid" || name == "comm_monoid") {
        th.sig = monoid_signature();
        Term u = Term::app("unit");
        th.laws.push_back(identity_law("assoc", c3, A("op", A("op", tv(0), tv(1)), tv(2)),
                                       A("op", tv(0), A("op", tv(1), tv(2)))));
        th.laws.push_back(identity_law("unit_l", c1, A("op", u, tv(0)), tv(0)));
        th.laws.push_back(identity_law("unit_r", c1, A("op", tv(0), u), tv(0)));
        if (name == "comm_monoid")
            th.laws.push_back(identity_law("comm", c2, A("op", tv(0), tv(1)), A("op", tv(1), tv(0))));
    } else if (name == "semiring" || name == "ring") {
        th.sig = semiring_signature(name == "ring");
        Term z = Term::app("zero"), o = Term::app("one");
        th.laws.push_back(identity_law("plus_assoc", c3, A("plus", A("plus", tv(0), tv(1)), tv(2)),
                                       A("plus", tv(0), A("plus", tv(1), tv(2)))));
        th.laws.push_back(identity_law("plus_comm", c2, A("plus", tv(0), tv(1)), A("plus", tv(1), tv(0))));
        th.laws.push_back(identity_law("plus_unit_l", c1, A("plus", z, tv(0)), tv(0)));
        th.laws.push_back(identity_law("plus_unit_r", c1, A("plus", tv(0), z), tv(0)));
        th.laws.push_back(identity_law("mult_assoc", c3, A("mult", A("mult", tv(0), tv(1)), tv(2)),
                                       A("mult", tv(0), A("mult", tv(1), tv(2)))));
        th.laws.push_back(identity_law("mult_comm", c2, A("mult", tv(0), tv(1)), A("mult", tv(1), tv(0))));
        th.laws.push_back(identity_law("mult_unit_l", c1, A("mult", o, tv(0)), tv(0)));
        th.laws.push_back(identity_law("mult_unit_r", c1, A("mult", tv(0), o), tv(0)));
        th.laws.push_back(identity_law("distr_l", c3, A("mult", tv(0), A("plus", tv(1), tv(2))),
                                       A("plus", A("mult", tv(0), tv(1)), A("mult", tv(0), tv(2)))));
        th.laws.push_back(identity_law("distr_r", c3, A("mult", A("plus", tv(0), tv(1)), tv(2)),
                                       A("plus", A("mult", tv(0), tv(2)), A("mult", tv(1), tv(2)))));
        th.laws.push_back(identity_law("absorb_l", c1, A("mult", z, tv(0)), z));
        th.laws.push_back(identity_law("absorb_r", c1, A("mult", tv(0), z), z));
        if (name == "ring")
            th.laws.push_back(identity_law("plus_inverse", c1,
                                           A("plus", tv(0), Term::app("neg", {tv(0)})), z));
    } else {
        throw Error(Errc::UnknownTheory, name);
    }
    for (Entailment& law : th.laws) {
        law.conclusion.first = validate_term(th.sig, law.ctx, law.conclusion.first);
        law.conclusion.second = validate_term(th.sig, law.ctx, law.conclusion.second);
    }
    return th;
}

// --- Law checking ------------------------------------------------------------

// True iff (all premises hold) implies (conclusion holds), under the model's
// setoid equality.
inline bool holds_under(const Model& m, const Assignment& a, const Entailment& e) {
    const std::string concl_sort = e.conclusion.first.sort.empty() ? std::string("num")
                                                                   : e.conclusion.first.sort;
    for (const auto& [l, r] : e.premises) {
        std::string s = l.sort.empty() ? concl_sort : l.sort;
        if (!m.equal(s, eval_term(m, a, l), eval_term(m, a, r))) return true;  // vacuous
    }
    return m.equal(concl_sort, eval_term(m, a, e.conclusion.first),
                   eval_term(m, a, e.conclusion.second));
}

namespace detail {

inline std::string describe_assignment(const Model& m, const VarContext& ctx, const Assignment& a) {
    std::string out = "{";
    for (const auto& [k, v] : a) {
        if (out.size() > 1) out += ", ";
        out += "v" + std::to_string(k) + "=" + m.show(ctx.sorts[k], v);
    }
    return out + "}";
}

template <typename Fn>
bool for_each_probe_assignment(const VarContext& ctx,
                               const std::map<std::string, std::vector<Value>>& probes, Fn&& fn) {
    std::vector<std::size_t> dims;
    for (const auto& s : ctx.sorts) {
        auto it = probes.find(s);
        if (it == probes.end()) throw Error(Errc::SortMismatch, "no probes for sort " + s);
        dims.push_back(it->second.size());
    }
    return detail::for_each_tuple(dims, [&](const std::vector<std::size_t>& t) {
        Assignment a;
        for (std::size_t i = 0; i < t.size(); ++i)
            a[static_cast<int>(i)] = probes.at(ctx.sorts[i])[t[i]];
        return fn(a);
    });
}

}  // namespace detail

inline VarietyReport check_in_variety(const Model& m, const EquationalTheory& th,
                                      Strategy strategy = {}) {
    if (m.sig != th.sig) throw Error(Errc::SignatureMismatch, "model does not fit theory " + th.name);
    VarietyReport report;
    report.algebra = is_algebra(m);
    if (strategy.kind == Strategy::Auto)
        strategy.kind = m.finite() ? Strategy::Exhaustive : Strategy::Sampled;
    for (const Entailment& law : th.laws) {
        LawResult lr;
        lr.law = law.name;
        Assignment cex;
        bool found_cex = false;
        auto check = [&](const Assignment& a) {
            if (holds_under(m, a, law)) return true;
            cex = a;
            found_cex = true;
            return false;
        };
        switch (strategy.kind) {
            case Strategy::Exhaustive:
                lr.strategy = "exhaustive";
                for_each_assignment(m, law.ctx, check);
                break;
            case Strategy::Probes:
                lr.strategy = "probes";
                detail::for_each_probe_assignment(law.ctx, strategy.probes, check);
                break;
            case Strategy::Sampled:
            case Strategy::Auto: {
                lr.strategy = "sampled " + std::to_string(strategy.samples);
                Rng rng(strategy.seed ^ std::hash<std::string>{}(law.name));
                for (std::size_t i = 0; i < strategy.samples && !found_cex; ++i)
                    check(sample_assignment(m, law.ctx, rng));
                break;
            }
        }
        if (found_cex) {
            lr.pass = false;
            lr.counterexample = detail::describe_assignment(m, law.ctx, cex);
        }
        report.laws.push_back(std::move(lr));
    }
    return report;
}

}  // namespace alg
