// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion is independent; all run even after a failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "alg/cli.hpp"
#include "alg/decision.hpp"
#include "alg/homomorphism.hpp"
#include "alg/normal_form.hpp"
#include "alg/numbers.hpp"
#include "alg/quote.hpp"
#include "alg/theory.hpp"

using namespace alg;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Summary {
    int failures = 0;

    void report(int criterion, bool pass, const std::string& label,
                const std::string& detail = "") {
        std::cout << "criterion " << criterion << " (" << label
                  << "): " << (pass ? "pass" : "fail");
        if (!detail.empty()) std::cout << " — " << detail;
        std::cout << "\n";
        if (!pass) ++failures;
    }
};

// ---- 1. law suites ----------------------------------------------------------

bool exhaustive_laws(const NaturalsImpl& impl, const EquationalTheory& th, std::uint64_t hi) {
    for (const Entailment& law : th.laws) {
        std::size_t k = law.ctx.sorts.size();
        std::vector<std::uint64_t> tuple(k, 0);
        while (true) {
            Assignment a;
            for (std::size_t i = 0; i < k; ++i)
                a[static_cast<int>(i)] = impl.from_u64(tuple[i]);
            if (!holds_under(impl.model, a, law)) return false;
            std::size_t i = 0;
            for (; i < k; ++i) {
                if (++tuple[i] <= hi) break;
                tuple[i] = 0;
            }
            if (i == k) break;
        }
    }
    return true;
}

bool criterion1(std::string& detail) {
    const NumericRegistry& reg = NumericRegistry::instance();
    EquationalTheory semi = builtin_theory("semiring");
    for (const std::string& name : {"peano", "binary", "closedterm"}) {
        if (!exhaustive_laws(reg.naturals(name), semi, 20)) {
            detail = name + " fails a semiring law exhaustively on 0..20";
            return false;
        }
        if (!check_in_variety(reg.naturals(name).model, semi).all_pass()) {
            detail = name + " fails a sampled semiring law";
            return false;
        }
    }
    if (!check_in_variety(intpair_model(), builtin_theory("ring")).all_pass()) {
        detail = "integer pairs fail a ring law";
        return false;
    }
    RationalsReport rq = rationals_checks(200);
    if (!rq.pass()) {
        detail = "rationals: " + rq.witness;
        return false;
    }
    return true;
}

// ---- 2. first homomorphism theorem over small cyclic monoids ----------------

bool criterion2(std::string& detail) {
    for (std::size_t m = 1; m <= 5; ++m) {
        for (std::size_t n = 1; n <= 5; ++n) {
            Model src = make_cyclic_monoid(m);
            Model tgt = make_cyclic_monoid(n);
            std::size_t hom_count = 0;
            // brute force over all n^m function families
            std::vector<std::size_t> f(m, 0);
            while (true) {
                bool is_hom = f[0] == 0;  // preserves the unit
                for (std::size_t a = 0; a < m && is_hom; ++a)
                    for (std::size_t b = 0; b < m && is_hom; ++b)
                        is_hom = (f[(a + b) % m] == (f[a] + f[b]) % n);
                if (is_hom) {
                    ++hom_count;
                    std::vector<std::size_t> table = f;
                    SortFn fn{{"num", [table](const Value& v) { return val(table[idx(v)]); }}};
                    IsoReport rep = first_homomorphism(check_homomorphism(src, tgt, fn));
                    if (!rep.verified) {
                        detail = "unverified isomorphism for a Z/" + std::to_string(m) + " -> Z/" +
                                 std::to_string(n) + " homomorphism";
                        return false;
                    }
                }
                std::size_t i = 0;
                for (; i < m; ++i) {
                    if (++f[i] < n) break;
                    f[i] = 0;
                }
                if (i == m) break;
            }
            if (hom_count != std::gcd(m, n)) {
                detail = "expected gcd(m,n) homomorphisms Z/" + std::to_string(m) + " -> Z/" +
                         std::to_string(n) + ", found " + std::to_string(hom_count);
                return false;
            }
        }
    }
    // pinned case: Z/4 -> Z/2 by parity yields the 2-class quotient
    Model z4 = make_cyclic_monoid(4), z2 = make_cyclic_monoid(2);
    SortFn parity{{"num", [](const Value& v) { return val(idx(v) % 2); }}};
    IsoReport rep = first_homomorphism(check_homomorphism(z4, z2, parity));
    if (!rep.verified || rep.quotient_model.finite_carrier("num").classes.class_count() != 2) {
        detail = "pinned Z/4 -> Z/2 quotient is not the 2-class quotient";
        return false;
    }
    return true;
}

// ---- 3. congruence checker equivalence --------------------------------------

bool criterion3(std::string& detail) {
    Rng rng(kDefaultSeed);
    std::vector<Model> models;
    for (std::size_t k = 2; k <= 4; ++k) {
        models.push_back(make_cyclic_monoid(k));
        models.push_back(make_zmod(k));
    }
    for (int i = 0; i < 200; ++i) {
        const Model& m = models[i % models.size()];
        std::size_t n = m.carrier_size("num");
        SortRelation sr;
        sr.n = n;
        sr.table.resize(n * n);
        for (char& c : sr.table) c = rng() % 2;
        // half the time, make it a genuine partition so both branches are hit
        if (i % 2) {
            std::vector<std::vector<std::size_t>> classes(1 + rng() % n);
            for (std::size_t e = 0; e < n; ++e) classes[rng() % classes.size()].push_back(e);
            sr = SortRelation::from_partition(n, classes);
        }
        CongruenceRel r;
        r.rel["num"] = sr;
        if (is_congruence(m, r).ok != congruence_via_product(m, r).ok) {
            detail = "disagreement on relation #" + std::to_string(i);
            return false;
        }
    }
    return true;
}

// ---- 4. free-model decision vs evaluation oracle ----------------------------

Int eval_int(const Term& t, const std::vector<Int>& env) {
    if (t.is_var) return env[t.var];
    if (t.op == "zero") return 0;
    if (t.op == "one") return 1;
    if (t.op == "plus") return eval_int(t.args[0], env) + eval_int(t.args[1], env);
    return eval_int(t.args[0], env) * eval_int(t.args[1], env);
}

Term random_semiring_term(Rng& rng, int vars, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 4);
    switch (pick(rng)) {
        case 0: return Term::app("zero");
        case 1: return Term::app("one");
        case 2: return Term::v(static_cast<int>(rng() % vars));
        case 3:
            return Term::app("plus", {random_semiring_term(rng, vars, depth - 1),
                                      random_semiring_term(rng, vars, depth - 1)});
        default:
            return Term::app("mult", {random_semiring_term(rng, vars, depth - 1),
                                      random_semiring_term(rng, vars, depth - 1)});
    }
}

bool criterion4(std::string& detail) {
    Rng rng(kDefaultSeed);
    VarContext ctx;
    ctx.sorts.assign(3, "num");
    for (int i = 0; i < 500; ++i) {
        Term a = random_semiring_term(rng, 3, 6);
        Term b = random_semiring_term(rng, 3, 6);
        bool dec = decide_free_eq("semiring", ctx, a, b);
        bool oracle = true;
        for (Int x = 0; x <= 4 && oracle; ++x)
            for (Int y = 0; y <= 4 && oracle; ++y)
                for (Int z = 0; z <= 4 && oracle; ++z)
                    oracle = (eval_int(a, {x, y, z}) == eval_int(b, {x, y, z}));
        if (dec != oracle) {
            detail = "disagreement on pair #" + std::to_string(i);
            return false;
        }
    }
    return true;
}

// ---- 5. round trips between Naturals implementations ------------------------

bool criterion5(std::string& detail) {
    const NumericRegistry& reg = NumericRegistry::instance();
    for (const std::string& an : reg.naturals_names()) {
        for (const std::string& bn : reg.naturals_names()) {
            const NaturalsImpl& a = reg.naturals(an);
            const NaturalsImpl& b = reg.naturals(bn);
            Rng rng(kDefaultSeed);
            for (int i = 0; i < 500; ++i) {
                Value va = a.model.sample("num", rng);
                if (!iso_naturals_check(a, b, va)) {
                    detail = an + " -> " + bn + " round trip fails at " + a.show(va);
                    return false;
                }
            }
        }
    }
    return true;
}

// ---- 6. initiality uniqueness at desk scale ---------------------------------

bool criterion6(std::string& detail) {
    Model peano = peano_model();
    Model z6 = make_zmod(6);
    SortFn f{{"num", [](const Value& v) { return val(std::any_cast<const PeanoNat&>(v).n % 6); }}};
    Homomorphism h = check_homomorphism(peano, z6, f);
    SemiringOps<Value> R = semiring_ops_of_model(z6);
    for (std::uint64_t n = 0; n <= 40; ++n) {
        Value via_hom = h.map("num", Value(PeanoNat{n}));
        Value via_fold = naturals_to_semiring(PeanoNat{n}, R);
        if (!z6.equal("num", via_hom, via_fold)) {
            detail = "disagreement at " + std::to_string(n);
            return false;
        }
    }
    return true;
}

// ---- 7. quoting: pinned shape + evaluation over generated expressions -------

HostExpr random_host(Rng& rng, int depth, std::vector<std::string>& used, int max_atoms) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 2);
    switch (pick(rng)) {
        case 0: return hone();
        case 1:
            if (!used.empty() && rng() % 2) return hatom(used[rng() % used.size()]);
            if (static_cast<int>(used.size()) < max_atoms) {
                used.push_back("a" + std::to_string(used.size()));
                return hatom(used.back());
            }
            return hone();
        default:
            return hmult(random_host(rng, depth - 1, used, max_atoms),
                         random_host(rng, depth - 1, used, max_atoms));
    }
}

bool criterion7(const std::string& data_dir, std::string& detail) {
    // golden: CLI output for the pinned expression
    std::ifstream golden_in(data_dir + "/quote_golden.txt");
    std::stringstream golden;
    golden << golden_in.rdbuf();
    std::ostringstream out, err;
    int code = cli::run({"quote", "(x*y)*(x*1)"}, out, err);
    if (code != cli::kOk || out.str() != golden.str()) {
        detail = "pinned expression deviates from the golden file";
        return false;
    }

    Rng rng(kDefaultSeed);
    for (int i = 0; i < 1000; ++i) {
        std::vector<std::string> used;
        HostExpr host = random_host(rng, 8, used, 5);
        std::map<std::string, Int> values;
        RTerm prior = novars();
        if (i % 2) {  // nonempty prior heap sharing one token with the pool
            prior = merge(singlevar("p"), singlevar("a0"));
            values["p"] = 13;
            values["a0"] = 2;
        }
        // atom values keyed by token
        int next = 2;
        collect_atom_values(host, values);
        for (auto& [tok, v] : values)
            if (v == 0) v = next++;
        HostExpr valued = host;
        // push the chosen values back into the tree so eval_host sees them
        std::function<void(HostExpr&)> assign = [&](HostExpr& e) {
            if (e.tag == HostExpr::HAtom) e.value = values.at(e.token);
            for (HostExpr& a : e.args) assign(a);
        };
        assign(valued);
        QuoteResult q = quote_expr(prior, valued);
        if (eval_env(q.env, values, q.expr) != eval_host(valued)) {
            detail = "evaluation mismatch on expression #" + std::to_string(i);
            return false;
        }
    }
    return true;
}

// ---- 8. specialization: agreement + priority selection ----------------------

bool criterion8(std::string& detail) {
    const NumericRegistry& reg = NumericRegistry::instance();
    for (const std::string& name : {"binary", "closedterm"}) {
        const NaturalsImpl& impl = reg.naturals(name);
        const auto& entries = reg.deciders(name);
        Rng rng(kDefaultSeed);
        std::uniform_int_distribution<std::uint64_t> d(0, 300);
        for (int i = 0; i < 1000; ++i) {
            Value a = impl.from_u64(d(rng)), b = impl.from_u64(d(rng));
            bool expected = entries[0].fn(a, b);
            for (const DeciderEntry& e : entries)
                if (e.fn(a, b) != expected) {
                    detail = name + ": decider " + e.rule + " disagrees";
                    return false;
                }
        }
    }
    for (const std::string& name : {"peano", "binary"}) {
        const NaturalsImpl& impl = reg.naturals(name);
        const SpecialOps& ops = reg.specialized_ops(name);
        Rng rng(kDefaultSeed + 1);
        std::uniform_int_distribution<std::uint64_t> d(0, 5000);
        for (int i = 0; i < 1000; ++i) {
            std::uint64_t a = d(rng), b = d(rng);
            std::uint64_t cut = impl.to_peano(ops.cut_sub(impl.from_u64(a), impl.from_u64(b))).n;
            std::uint64_t dist = impl.to_peano(ops.distance(impl.from_u64(a), impl.from_u64(b))).n;
            std::uint64_t twice = impl.to_peano(ops.doubled(impl.from_u64(a))).n;
            if (cut != (a > b ? a - b : 0) || dist != (a > b ? a - b : b - a) || twice != 2 * a) {
                detail = name + ": specialized op deviates from the generic route";
                return false;
            }
        }
    }
    // derivation inspection: resolution picks the priority-10 rule when present
    RuleBase rules = decision_rules();
    for (const std::string& name : {"binary", "closedterm", "intpair", "frac"}) {
        Derivation d = resolve(Goal{"Decider", {RTerm::c(name)}}, rules);
        if (d.priority != kSpecializedPriority) {
            detail = name + ": selected rule " + d.rule + " has priority " +
                     std::to_string(d.priority);
            return false;
        }
    }
    Derivation dp = resolve(Goal{"Decider", {RTerm::c("peano")}}, decision_rules());
    if (dp.priority != kGenericPriority) {
        detail = "peano (no specialized decider) did not fall back to the generic rule";
        return false;
    }
    return true;
}

// ---- 9. decision combinators vs brute force ---------------------------------

std::uint64_t brute_num(const RTerm& t) {
    if (t.sym == "plus") return brute_num(t.args[0]) + brute_num(t.args[1]);
    if (t.sym == "times") return brute_num(t.args[0]) * brute_num(t.args[1]);
    return std::stoull(t.sym);
}

bool brute(const RTerm& p) {
    if (p.sym == "eq") return brute_num(p.args[1]) == brute_num(p.args[2]);
    if (p.sym == "and") return brute(p.args[0]) && brute(p.args[1]);
    if (p.sym == "or") return brute(p.args[0]) || brute(p.args[1]);
    if (p.sym == "not") return !brute(p.args[0]);
    RTerm cur = p.args[1];
    while (cur.sym == "cons") {
        if (!brute(alg::detail::substitute_atom(p.args[2], p.args[0].sym, cur.args[0])))
            return false;
        cur = cur.args[1];
    }
    return true;
}

RTerm random_prop(Rng& rng, int depth, std::vector<std::string> scope) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 3);
    auto rand_num = [&](auto&& self, int d) -> RTerm {
        std::uniform_int_distribution<int> c(0, d <= 0 ? 1 : 3);
        switch (c(rng)) {
            case 0: return num_lit(rng() % 6);
            case 1:
                if (!scope.empty()) return num_var(scope[rng() % scope.size()]);
                return num_lit(rng() % 6);
            case 2: return num_plus(self(self, d - 1), self(self, d - 1));
            default: return num_times(self(self, d - 1), self(self, d - 1));
        }
    };
    static const char* impls[] = {"peano", "binary", "closedterm"};
    switch (pick(rng)) {
        case 0: return prop_eq(impls[rng() % 3], rand_num(rand_num, 2), rand_num(rand_num, 2));
        case 1: return prop_and(random_prop(rng, depth - 1, scope), random_prop(rng, depth - 1, scope));
        case 2: return prop_not(random_prop(rng, depth - 1, scope));
        default: {
            std::string v = "q" + std::to_string(scope.size());
            std::vector<std::uint64_t> dom;
            std::uniform_int_distribution<std::uint64_t> size(1, 5);
            for (std::uint64_t i = 0, n = size(rng); i < n; ++i) dom.push_back(rng() % 5);
            scope.push_back(v);
            return prop_forall(v, dom, random_prop(rng, depth - 1, scope));
        }
    }
}

bool criterion9(std::string& detail) {
    RuleBase rules = decision_rules();
    Rng rng(kDefaultSeed);
    for (int i = 0; i < 100; ++i) {
        RTerm p = random_prop(rng, 3, {});
        if (run_decision(p, rules) != brute(p)) {
            detail = "disagreement on proposition #" + std::to_string(i);
            return false;
        }
    }
    return true;
}

// ---- 10. CLI determinism ----------------------------------------------------

bool criterion10(const std::string& data_dir, std::string& detail) {
    std::vector<std::vector<std::string>> cases = {
        {"decide", "--theory", "semiring", "x*(y + 1) = x*y + x"},
        {"decide", "--theory", "monoid", "x*y = y*x"},
        {"quote", "(x*y)*(x*1)"},
        {"quote", "x*1", "--equality", "x", "--trace"},
        {"convert", "--from", "peano", "--to", "binary", "6"},
        {"check", "--theory", "ring", "--model", data_dir + "/z6_ring.json"},
        {"check", "--theory", "semiring", "--model", "binary", "--samples", "100", "--seed", "5"},
        {"homo", "--input", data_dir + "/homo_z4_z2.json"},
    };
    for (std::size_t i = 0; i < cases.size(); ++i) {
        std::ostringstream o1, e1, o2, e2;
        int c1 = cli::run(cases[i], o1, e1);
        int c2 = cli::run(cases[i], o2, e2);
        if (c1 != c2 || o1.str() != o2.str() || e1.str() != e2.str()) {
            detail = "case #" + std::to_string(i) + " differs between runs";
            return false;
        }
    }
    return true;
}

}  // namespace

int main() {
    const std::string data_dir = TEST_DATA_DIR;
    Summary s;
    std::string detail;

    auto timed = [&](int num, const std::string& label, double budget, auto&& fn) {
        detail.clear();
        Clock::time_point t0 = Clock::now();
        bool ok = false;
        try {
            ok = fn();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs = seconds_since(t0);
        if (ok && budget > 0 && secs > budget) {
            ok = false;
            detail = "exceeded time budget (" + std::to_string(secs) + "s)";
        }
        s.report(num, ok, label, detail);
    };

    timed(1, "law suites", 30, [&] { return criterion1(detail); });
    timed(2, "first homomorphism theorem", 60, [&] { return criterion2(detail); });
    timed(3, "congruence checker equivalence", 0, [&] { return criterion3(detail); });
    timed(4, "free-model decision vs oracle", 30, [&] { return criterion4(detail); });
    timed(5, "naturals round trips", 0, [&] { return criterion5(detail); });
    timed(6, "initiality uniqueness", 0, [&] { return criterion6(detail); });
    timed(7, "quoting", 0, [&] { return criterion7(data_dir, detail); });
    timed(8, "specialization", 0, [&] { return criterion8(detail); });
    timed(9, "decision combinators", 0, [&] { return criterion9(detail); });
    timed(10, "CLI determinism", 0, [&] { return criterion10(data_dir, detail); });

    return s.failures == 0 ? 0 : 1;
}
