#pragma once

#include <functional>
#include <string>

#include "alg/homomorphism.hpp"
#include "alg/model.hpp"
#include "alg/normal_form.hpp"
#include "alg/term.hpp"

namespace alg {

// Natural numbers as closed semiring terms, with equality decided by
// normalization. The initial model obtained from the closed term algebra
// modulo the congruence closure of the semiring laws.
struct ClosedTermNat {
    Term term;  // closed, over the semiring signature

    static ClosedTermNat zero() { return {Term::app("zero")}; }
    static ClosedTermNat one() { return {Term::app("one")}; }
    static ClosedTermNat from_u64(std::uint64_t n) { return {numeral_term(Int(n))}; }

    ClosedTermNat add(const ClosedTermNat& o) const {
        return {Term::app("plus", {term, o.term})};
    }
    ClosedTermNat mul(const ClosedTermNat& o) const {
        return {Term::app("mult", {term, o.term})};
    }

    bool equals(const ClosedTermNat& o) const {
        return decide_free_eq("semiring", VarContext{}, term, o.term);
    }

    // The numeral value: the coefficient at the empty monomial.
    Int value() const {
        NormalForm nf = normalize("semiring", VarContext{}, term);
        auto it = nf.poly.find(Monomial{});
        return it == nf.poly.end() ? Int(0) : it->second;
    }
};

// Evaluation of a closed term into a model of the same signature: the unique
// arrow out of the initial (closed term) algebra.
inline Value initial_arrow_eval(const Term& closed, const Model& target) {
    Term vt = validate_term(target.sig, VarContext{}, closed);
    return eval_term(target, Assignment{}, vt);
}

// Testable form of initiality uniqueness: two arrows with the same endpoints
// must agree on every probe, up to the target setoid.
inline bool initial_agreement(const Homomorphism& h1, const Homomorphism& h2,
                              const std::string& sort, const std::vector<Value>& probes) {
    if (h1.source().sig != h2.source().sig || h1.target().sig != h2.target().sig)
        throw Error(Errc::SourceTargetMismatch, "arrows have unlike endpoints");
    for (const Value& p : probes)
        if (!h1.target().equal(sort, h1.map(sort, p), h2.map(sort, p))) return false;
    return true;
}

// Transfers an equality decider across a (verified) isomorphism:
// dec_B(x, y) := dec_A(back x, back y).
template <typename A, typename B>
std::function<bool(const B&, const B&)> transfer_decider(
    std::function<A(const B&)> back, std::function<bool(const A&, const A&)> dec_a) {
    return [back = std::move(back), dec_a = std::move(dec_a)](const B& x, const B& y) {
        return dec_a(back(x), back(y));
    };
}

}  // namespace alg
