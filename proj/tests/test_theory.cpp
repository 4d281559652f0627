#include "doctest.h"

#include "alg/numbers.hpp"
#include "alg/theory.hpp"

using namespace alg;

namespace {

// (ℕ, truncated subtraction, 0) over the monoid signature — deliberately not
// a monoid.
Model monus_model(std::uint64_t bound = 10) {
    Model m;
    m.sig = monoid_signature();
    SampledCarrier c;
    c.sample = [bound](Rng& rng) {
        std::uniform_int_distribution<std::uint64_t> d(0, bound);
        return Value(PeanoNat{d(rng)});
    };
    c.equal = [](const Value& a, const Value& b) {
        return std::any_cast<const PeanoNat&>(a) == std::any_cast<const PeanoNat&>(b);
    };
    c.show = [](const Value& v) { return std::to_string(std::any_cast<const PeanoNat&>(v).n); };
    m.carriers["num"] = std::move(c);
    m.ops["unit"].fn = [](const std::vector<Value>&) { return Value(PeanoNat::zero()); };
    m.ops["op"].fn = [](const std::vector<Value>& a) {
        auto x = std::any_cast<const PeanoNat&>(a[0]).n, y = std::any_cast<const PeanoNat&>(a[1]).n;
        return Value(PeanoNat{x > y ? x - y : 0});
    };
    return m;
}

const LawResult& law_named(const VarietyReport& r, const std::string& name) {
    for (const LawResult& l : r.laws)
        if (l.law == name) return l;
    throw std::runtime_error("no law " + name);
}

}  // namespace

TEST_CASE("builtin theories have the advertised shapes") {
    EquationalTheory mono = builtin_theory("monoid");
    CHECK(mono.sig.ops.size() == 2);
    CHECK(mono.sig.ops.at("op").args.size() == 2);
    CHECK(mono.sig.ops.at("unit").args.empty());
    CHECK(mono.laws.size() == 3);

    CHECK(builtin_theory("comm_monoid").laws.size() == 4);
    CHECK(builtin_theory("semiring").laws.size() == 12);

    EquationalTheory ring = builtin_theory("ring");
    CHECK(ring.laws.size() == 13);
    CHECK(ring.sig.ops.count("neg") == 1);

    CHECK_THROWS_AS(builtin_theory("group"), Error);
}

TEST_CASE("holds_under") {
    EquationalTheory semi = builtin_theory("semiring");
    Model peano = peano_model();
    const Entailment* distr = nullptr;
    for (const Entailment& l : semi.laws)
        if (l.name == "distr_l") distr = &l;
    REQUIRE(distr != nullptr);
    Assignment a{{0, Value(PeanoNat{2})}, {1, Value(PeanoNat{5})}, {2, Value(PeanoNat{9})}};
    CHECK(holds_under(peano, a, *distr));

    SUBCASE("corrupted table breaks associativity") {
        Model z4 = make_cyclic_monoid(4);
        std::vector<std::size_t> t = z4.ops["op"].table;
        t[1 * 4 + 2] = 0;  // 1+2 := 0
        set_table_op(z4, "op", std::move(t));
        EquationalTheory mono = builtin_theory("monoid");
        const Entailment& assoc = mono.laws[0];
        // (1+2)+3 = 0+3 = 3 but 1+(2+3) = 1+1 = 2
        Assignment b{{0, val(1)}, {1, val(2)}, {2, val(3)}};
        CHECK_FALSE(holds_under(z4, b, assoc));
    }

    SUBCASE("a false premise makes the entailment vacuously true") {
        Entailment e;
        e.ctx = VarContext{{"num"}};
        e.premises.push_back({Term::app("zero"), Term::app("one")});
        e.conclusion = {Term::v(0), Term::app("zero")};  // absurd conclusion
        for (auto* t : {&e.premises[0].first, &e.premises[0].second, &e.conclusion.first,
                        &e.conclusion.second})
            *t = validate_term(semi.sig, e.ctx, *t);
        Assignment b{{0, Value(PeanoNat{41})}};
        CHECK(holds_under(peano, b, e));
    }
}

TEST_CASE("check_in_variety: exhaustive pass on Z/6 as a ring") {
    VarietyReport r = check_in_variety(make_zmod(6, true), builtin_theory("ring"));
    CHECK(r.all_pass());
    for (const LawResult& l : r.laws) CHECK(l.strategy == "exhaustive");
}

TEST_CASE("check_in_variety: sampled pass for PeanoNat as a semiring") {
    VarietyReport r = check_in_variety(peano_model(), builtin_theory("semiring"));
    CHECK(r.all_pass());
    CHECK(law_named(r, "plus_comm").strategy == "sampled 1000");
}

TEST_CASE("check_in_variety: truncated subtraction is not associative") {
    VarietyReport r = check_in_variety(monus_model(), builtin_theory("comm_monoid"));
    CHECK_FALSE(r.all_pass());
    const LawResult& assoc = law_named(r, "assoc");
    CHECK_FALSE(assoc.pass);
    CHECK_FALSE(assoc.counterexample.empty());
}

TEST_CASE("check_in_variety is deterministic under a fixed seed") {
    auto run = [] {
        VarietyReport r = check_in_variety(monus_model(), builtin_theory("comm_monoid"),
                                           Strategy::sampled(200, 42));
        std::string out;
        for (const LawResult& l : r.laws)
            out += l.law + ":" + (l.pass ? "pass" : l.counterexample) + ";";
        return out;
    };
    CHECK(run() == run());
}

TEST_CASE("check_in_variety rejects a signature mismatch") {
    CHECK_THROWS_AS(check_in_variety(make_cyclic_monoid(3), builtin_theory("semiring")), Error);
}
