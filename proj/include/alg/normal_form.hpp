#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <vector>

#include "alg/term.hpp"
#include "alg/theory.hpp"

namespace alg {

using Int = boost::multiprecision::cpp_int;

// A monomial: variable indices in ascending order, with multiplicity.
using Monomial = std::vector<int>;

// Canonical representatives of terms modulo a built-in theory:
//   Word — free monoid (ordered variable list)
//   Bag  — free commutative monoid (multiset)
//   Poly — free commutative (semi)ring (monomial -> nonzero coefficient;
//          coefficients are naturals for semiring, integers for ring)
struct NormalForm {
    enum Kind { Word, Bag, Poly } kind = Word;
    std::vector<int> word;
    std::map<Monomial, Int> poly;

    bool operator==(const NormalForm&) const = default;
};

namespace detail {

inline std::map<Monomial, Int> poly_add(const std::map<Monomial, Int>& a,
                                        const std::map<Monomial, Int>& b) {
    std::map<Monomial, Int> out = a;
    for (const auto& [m, c] : b) {
        Int& slot = out[m];
        slot += c;
        if (slot == 0) out.erase(m);
    }
    return out;
}

inline std::map<Monomial, Int> poly_mul(const std::map<Monomial, Int>& a,
                                        const std::map<Monomial, Int>& b) {
    std::map<Monomial, Int> out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            Monomial m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            std::sort(m.begin(), m.end());
            Int& slot = out[m];
            slot += ca * cb;
            if (slot == 0) out.erase(m);
        }
    return out;
}

inline std::map<Monomial, Int> poly_of_term(const Term& t, bool ring) {
    if (t.is_var) return {{Monomial{t.var}, 1}};
    if (t.op == "zero") return {};
    if (t.op == "one") return {{Monomial{}, 1}};
    if (t.op == "plus") return poly_add(poly_of_term(t.args[0], ring), poly_of_term(t.args[1], ring));
    if (t.op == "mult") return poly_mul(poly_of_term(t.args[0], ring), poly_of_term(t.args[1], ring));
    if (ring && t.op == "neg") {
        auto p = poly_of_term(t.args[0], ring);
        for (auto& [m, c] : p) c = -c;
        return p;
    }
    throw Error(Errc::UnknownOp, t.op);
}

inline void word_of_term(const Term& t, std::vector<int>& out) {
    if (t.is_var) {
        out.push_back(t.var);
        return;
    }
    if (t.op == "unit") return;
    if (t.op == "op") {
        word_of_term(t.args[0], out);
        word_of_term(t.args[1], out);
        return;
    }
    throw Error(Errc::UnknownOp, t.op);
}

}  // namespace detail

// Law-directed normalization into the free model of a built-in theory. The
// result is invariant under rewriting the input with any law of the theory.
inline NormalForm normalize(const std::string& theory, const VarContext& ctx, const Term& t) {
    EquationalTheory th = builtin_theory(theory);  // throws UnknownTheory
    Term vt = validate_term(th.sig, ctx, t);
    NormalForm nf;
    if (theory == "monoid" || theory == "comm_monoid") {
        detail::word_of_term(vt, nf.word);
        if (theory == "comm_monoid") {
            std::sort(nf.word.begin(), nf.word.end());
            nf.kind = NormalForm::Bag;
        } else {
            nf.kind = NormalForm::Word;
        }
    } else {
        nf.kind = NormalForm::Poly;
        nf.poly = detail::poly_of_term(vt, theory == "ring");
    }
    return nf;
}

// Sound and complete equality in the free model: identical normal forms.
inline bool decide_free_eq(const std::string& theory, const VarContext& ctx, const Term& t1,
                           const Term& t2) {
    return normalize(theory, ctx, t1) == normalize(theory, ctx, t2);
}

// --- Reconstruction (used to state normalization idempotence) ----------------

inline Term numeral_term(const Int& n) {
    if (n == 0) return Term::app("zero");
    if (n == 1) return Term::app("one");
    Term half = numeral_term(n / 2);
    Term twice = Term::app("mult", {Term::app("plus", {Term::app("one"), Term::app("one")}), half});
    if (n % 2 == 1) return Term::app("plus", {twice, Term::app("one")});
    return twice;
}

inline Term term_of_normal_form(const NormalForm& nf, const std::string& theory) {
    if (nf.kind == NormalForm::Word || nf.kind == NormalForm::Bag) {
        if (nf.word.empty()) return Term::app("unit");
        Term acc = Term::v(nf.word[0]);
        for (std::size_t i = 1; i < nf.word.size(); ++i)
            acc = Term::app("op", {acc, Term::v(nf.word[i])});
        return acc;
    }
    if (nf.poly.empty()) return Term::app("zero");
    Term acc;
    bool first = true;
    for (const auto& [m, c] : nf.poly) {
        Term mono;
        bool have = false;
        for (int v : m) {
            mono = have ? Term::app("mult", {mono, Term::v(v)}) : Term::v(v);
            have = true;
        }
        Term entry;
        Int coeff = c < 0 ? Int(-c) : c;
        if (!have)
            entry = numeral_term(coeff);
        else if (coeff == 1)
            entry = mono;
        else
            entry = Term::app("mult", {numeral_term(coeff), mono});
        if (c < 0) {
            if (theory != "ring") throw Error(Errc::UnsupportedTheory, "negative coefficient");
            entry = Term::app("neg", {entry});
        }
        acc = first ? entry : Term::app("plus", {acc, entry});
        first = false;
    }
    return acc;
}

// --- Printing ------------------------------------------------------------------

namespace detail {

inline std::string var_name(int i) {
    switch (i) {
        case 0: return "x";
        case 1: return "y";
        case 2: return "z";
        default: return "v" + std::to_string(i);
    }
}

inline std::string superscript(int e) {
    static const char* digits[10] = {"⁰", "¹", "²", "³", "⁴",
                                     "⁵", "⁶", "⁷", "⁸", "⁹"};
    std::string dec = std::to_string(e), out;
    for (char d : dec) out += digits[d - '0'];
    return out;
}

inline std::string monomial_to_string(const Monomial& m) {
    std::string out;
    for (std::size_t i = 0; i < m.size();) {
        std::size_t j = i;
        while (j < m.size() && m[j] == m[i]) ++j;
        out += var_name(m[i]);
        if (j - i > 1) out += superscript(static_cast<int>(j - i));
        i = j;
    }
    return out;
}

}  // namespace detail

// `3·x²y + 2` for polynomials, `x·y·x` for words/bags, stable across runs.
inline std::string normal_form_to_string(const NormalForm& nf) {
    if (nf.kind == NormalForm::Word || nf.kind == NormalForm::Bag) {
        if (nf.word.empty()) return "1";
        std::string out;
        for (std::size_t i = 0; i < nf.word.size(); ++i)
            out += (i ? "·" : "") + detail::var_name(nf.word[i]);
        return out;
    }
    if (nf.poly.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : nf.poly) {
        if (!out.empty()) out += " + ";
        std::string coeff = c.str();
        if (m.empty()) {
            out += coeff;
        } else if (c == 1) {
            out += detail::monomial_to_string(m);
        } else if (c == -1) {
            out += "-" + detail::monomial_to_string(m);
        } else {
            out += coeff + "·" + detail::monomial_to_string(m);
        }
    }
    return out;
}

}  // namespace alg
