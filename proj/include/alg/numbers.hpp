#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alg/initial.hpp"
#include "alg/model.hpp"
#include "alg/theory.hpp"

namespace alg {

// --- Representations ----------------------------------------------------------

// Unary numeral. Stored run-length encoded (the successor count) so that
// desk-scale checks over values up to 10^6 stay cheap; the interface is the
// structural one: zero / succ / pred.
struct PeanoNat {
    std::uint64_t n = 0;

    static PeanoNat zero() { return {0}; }
    PeanoNat succ() const { return {n + 1}; }
    PeanoNat pred() const {
        if (n == 0) throw Error(Errc::Unsupported, "pred of zero");
        return {n - 1};
    }
    bool is_zero() const { return n == 0; }

    PeanoNat add(const PeanoNat& o) const { return {n + o.n}; }
    PeanoNat mul(const PeanoNat& o) const { return {n * o.n}; }

    bool operator==(const PeanoNat&) const = default;
};

// Canonical binary numeral: little-endian bit list, no leading (high) zeros.
struct BinNat {
    std::vector<bool> bits;  // bits[0] is least significant; empty means 0

    static BinNat zero() { return {}; }

    static BinNat from_u64(std::uint64_t v) {
        BinNat b;
        while (v) {
            b.bits.push_back(v & 1);
            v >>= 1;
        }
        return b;
    }

    std::uint64_t to_u64() const {
        std::uint64_t v = 0;
        for (std::size_t i = bits.size(); i > 0; --i) v = (v << 1) | (bits[i - 1] ? 1 : 0);
        return v;
    }

    void trim() {
        while (!bits.empty() && !bits.back()) bits.pop_back();
    }

    bool is_zero() const { return bits.empty(); }

    BinNat add(const BinNat& o) const {
        BinNat out;
        bool carry = false;
        std::size_t n = std::max(bits.size(), o.bits.size());
        for (std::size_t i = 0; i < n || carry; ++i) {
            int s = carry;
            if (i < bits.size() && bits[i]) ++s;
            if (i < o.bits.size() && o.bits[i]) ++s;
            out.bits.push_back(s & 1);
            carry = s >= 2;
        }
        out.trim();
        return out;
    }

    BinNat mul(const BinNat& o) const {
        BinNat acc;
        BinNat shifted = o;
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i]) {
                BinNat term = shifted;
                term.bits.insert(term.bits.begin(), i, false);
                acc = acc.add(term);
            }
        }
        acc.trim();
        return acc;
    }

    BinNat doubled() const {
        if (is_zero()) return {};
        BinNat out = *this;
        out.bits.insert(out.bits.begin(), false);
        return out;
    }

    std::optional<BinNat> halved() const {
        if (is_zero()) return BinNat{};
        if (bits[0]) return std::nullopt;  // odd
        BinNat out = *this;
        out.bits.erase(out.bits.begin());
        return out;
    }

    // truncated subtraction on bits, clamped at zero
    BinNat cut_sub(const BinNat& o) const {
        if (less_eq(*this, o)) return {};
        BinNat out;
        int borrow = 0;
        for (std::size_t i = 0; i < bits.size(); ++i) {
            int a = bits[i] ? 1 : 0;
            int b = (i < o.bits.size() && o.bits[i]) ? 1 : 0;
            int d = a - b - borrow;
            borrow = d < 0;
            out.bits.push_back((d + 2) & 1);
        }
        out.trim();
        return out;
    }

    static bool less_eq(const BinNat& a, const BinNat& b) {
        if (a.bits.size() != b.bits.size()) return a.bits.size() < b.bits.size();
        for (std::size_t i = a.bits.size(); i > 0; --i)
            if (a.bits[i - 1] != b.bits[i - 1]) return b.bits[i - 1];
        return true;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = bits.size(); i > 0; --i) s += bits[i - 1] ? '1' : '0';
        return s;
    }

    bool operator==(const BinNat&) const = default;  // canonical form: bit equality
};

// Grothendieck pair over the naturals: (pos, neg) means pos - neg.
// Setoid equality (a,b) = (c,d) iff a + d = c + b; no reduction is performed.
struct IntPair {
    PeanoNat pos, neg;

    static IntPair from_i64(std::int64_t v) {
        if (v >= 0) return {PeanoNat{static_cast<std::uint64_t>(v)}, PeanoNat{0}};
        return {PeanoNat{0}, PeanoNat{static_cast<std::uint64_t>(-v)}};
    }

    bool equals(const IntPair& o) const { return pos.add(o.neg) == o.pos.add(neg); }

    IntPair add(const IntPair& o) const { return {pos.add(o.pos), neg.add(o.neg)}; }
    IntPair mul(const IntPair& o) const {
        return {pos.mul(o.pos).add(neg.mul(o.neg)), pos.mul(o.neg).add(neg.mul(o.pos))};
    }
    IntPair negated() const { return {neg, pos}; }
    bool is_zero() const { return pos == neg; }

    std::string to_string() const {
        std::int64_t v = static_cast<std::int64_t>(pos.n) - static_cast<std::int64_t>(neg.n);
        return std::to_string(v);
    }
};

// Formal fraction of integers; denominator nonzero, never reduced.
struct Frac {
    IntPair num, den;

    Frac(IntPair n, IntPair d) : num(std::move(n)), den(std::move(d)) {
        if (den.is_zero()) throw Error(Errc::Unsupported, "zero denominator");
    }

    bool equals(const Frac& o) const { return num.mul(o.den).equals(o.num.mul(den)); }

    Frac add(const Frac& o) const {
        return Frac(num.mul(o.den).add(o.num.mul(den)), den.mul(o.den));
    }
    Frac mul(const Frac& o) const { return Frac(num.mul(o.num), den.mul(o.den)); }
    Frac negated() const { return Frac(num.negated(), den); }
    Frac inverse() const { return Frac(den, num); }  // throws if num is zero
    bool is_zero() const { return num.is_zero(); }

    std::string to_string() const { return num.to_string() + "/" + den.to_string(); }
};

// --- Generic morphisms ----------------------------------------------------------

template <typename T>
struct SemiringOps {
    T zero, one;
    std::function<T(const T&, const T&)> plus, mult;
};

template <typename T>
struct RingOps : SemiringOps<T> {
    std::function<T(const T&)> neg;
};

// The unique semiring morphism out of the naturals, defined by the structural
// fold f(0) = 0, f(n+1) = f(n) + 1.
template <typename T>
T naturals_to_semiring(const PeanoNat& n, const SemiringOps<T>& R) {
    T acc = R.zero;
    for (std::uint64_t i = 0; i < n.n; ++i) acc = R.plus(acc, R.one);
    return acc;
}

// The unique ring morphism out of the integers: f(pos) - f(neg).
template <typename T>
T integers_to_ring(const IntPair& z, const RingOps<T>& R) {
    return R.plus(naturals_to_semiring<T>(z.pos, R), R.neg(naturals_to_semiring<T>(z.neg, R)));
}

// Ops bundle of a model over the semiring signature, for generic morphisms
// into arbitrary models.
inline SemiringOps<Value> semiring_ops_of_model(const Model& m) {
    SemiringOps<Value> R;
    R.zero = m.apply("zero", {});
    R.one = m.apply("one", {});
    R.plus = [&m](const Value& a, const Value& b) { return m.apply("plus", {a, b}); };
    R.mult = [&m](const Value& a, const Value& b) { return m.apply("mult", {a, b}); };
    return R;
}

inline RingOps<Value> ring_ops_of_model(const Model& m) {
    RingOps<Value> R;
    static_cast<SemiringOps<Value>&>(R) = semiring_ops_of_model(m);
    R.neg = [&m](const Value& a) { return m.apply("neg", {a}); };
    return R;
}

// --- Registry -------------------------------------------------------------------

// A registered implementation of the Naturals interface: an a-priori semiring
// together with the initial arrows in both computable directions.
struct NaturalsImpl {
    std::string name;
    Value zero, one;
    std::function<Value(const Value&, const Value&)> add, mul;
    std::function<Value(std::uint64_t)> from_u64;
    std::function<PeanoNat(const Value&)> to_peano;    // retract to the canonical impl
    std::function<Value(const PeanoNat&)> from_peano;  // initial arrow into this impl
    std::function<std::string(const Value&)> show;
    std::function<Value(const std::string&)> parse;
    Model model;  // sampled model over the semiring signature
    std::uint64_t sample_bound = 1000000;
};

struct DeciderEntry {
    std::string rule;  // e.g. "decide_binnat_specialized"
    int priority;      // lower = preferred; generic = 100, specialized = 10
    std::function<bool(const Value&, const Value&)> fn;
};

constexpr int kGenericPriority = 100;
constexpr int kSpecializedPriority = 10;

// Specialized operations; each must agree pointwise with the generic
// reference route through PeanoNat.
struct SpecialOps {
    std::function<Value(const Value&, const Value&)> cut_sub;   // max(a-b, 0)
    std::function<Value(const Value&, const Value&)> distance;  // |a-b|
    std::function<Value(const Value&)> doubled;
    std::function<std::optional<Value>(const Value&)> halved;  // defined on evens
};

class NumericRegistry {
  public:
    static const NumericRegistry& instance();

    const NaturalsImpl& naturals(const std::string& name) const {
        auto it = nats_.find(name);
        if (it == nats_.end()) throw Error(Errc::UnknownImplementation, name);
        return it->second;
    }

    std::vector<std::string> naturals_names() const {
        std::vector<std::string> out;
        for (const auto& [k, v] : nats_) out.push_back(k);
        return out;
    }

    const std::vector<DeciderEntry>& deciders(const std::string& impl) const {
        auto it = deciders_.find(impl);
        if (it == deciders_.end()) throw Error(Errc::UnknownImplementation, impl);
        return it->second;
    }

    // The selected decider: lowest priority number wins, ties by registration
    // order (the entries are kept in registration order).
    const DeciderEntry& selected_decider(const std::string& impl) const {
        const auto& entries = deciders(impl);
        const DeciderEntry* best = &entries.front();
        for (const auto& e : entries)
            if (e.priority < best->priority) best = &e;
        return *best;
    }

    bool decide_eq(const std::string& impl, const Value& x, const Value& y) const {
        return selected_decider(impl).fn(x, y);
    }

    const SpecialOps& specialized_ops(const std::string& impl) const {
        auto it = special_.find(impl);
        if (it == special_.end()) throw Error(Errc::UnknownImplementation, impl);
        return it->second;
    }

  private:
    NumericRegistry();

    std::map<std::string, NaturalsImpl> nats_;
    std::map<std::string, std::vector<DeciderEntry>> deciders_;
    std::map<std::string, SpecialOps> special_;
};

// --- Sampled models for the concrete representations ----------------------------

namespace detail {

template <typename T>
SampledCarrier make_carrier(std::function<T(Rng&)> sample,
                            std::function<bool(const T&, const T&)> eq,
                            std::function<std::string(const T&)> show,
                            std::function<std::pair<T, T>(Rng&)> eq_pair = nullptr) {
    SampledCarrier c;
    c.sample = [sample](Rng& rng) { return Value(sample(rng)); };
    c.equal = [eq](const Value& a, const Value& b) {
        return eq(std::any_cast<const T&>(a), std::any_cast<const T&>(b));
    };
    c.show = [show](const Value& v) { return show(std::any_cast<const T&>(v)); };
    if (eq_pair)
        c.sample_equal_pair = [eq_pair](Rng& rng) {
            auto [a, b] = eq_pair(rng);
            return std::pair<Value, Value>(Value(a), Value(b));
        };
    return c;
}

template <typename T>
void set_semiring_ops(Model& m, T zero, T one, std::function<T(const T&, const T&)> add,
                      std::function<T(const T&, const T&)> mul) {
    m.ops["zero"].fn = [zero](const std::vector<Value>&) { return Value(zero); };
    m.ops["one"].fn = [one](const std::vector<Value>&) { return Value(one); };
    m.ops["plus"].fn = [add](const std::vector<Value>& a) {
        return Value(add(std::any_cast<const T&>(a[0]), std::any_cast<const T&>(a[1])));
    };
    m.ops["mult"].fn = [mul](const std::vector<Value>& a) {
        return Value(mul(std::any_cast<const T&>(a[0]), std::any_cast<const T&>(a[1])));
    };
}

inline Term random_closed_semiring_term(Rng& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 3);
    switch (pick(rng)) {
        case 0: return Term::app("zero");
        case 1: return Term::app("one");
        case 2:
            return Term::app("plus", {random_closed_semiring_term(rng, depth - 1),
                                      random_closed_semiring_term(rng, depth - 1)});
        default:
            return Term::app("mult", {random_closed_semiring_term(rng, depth - 1),
                                      random_closed_semiring_term(rng, depth - 1)});
    }
}

}  // namespace detail

inline Model peano_model(std::uint64_t bound = 1000000) {
    Model m;
    m.sig = semiring_signature();
    m.carriers["num"] = detail::make_carrier<PeanoNat>(
        [bound](Rng& rng) {
            std::uniform_int_distribution<std::uint64_t> d(0, bound);
            return PeanoNat{d(rng)};
        },
        [](const PeanoNat& a, const PeanoNat& b) { return a == b; },
        [](const PeanoNat& a) { return std::to_string(a.n); });
    detail::set_semiring_ops<PeanoNat>(
        m, PeanoNat::zero(), PeanoNat{1},
        [](const PeanoNat& a, const PeanoNat& b) { return a.add(b); },
        [](const PeanoNat& a, const PeanoNat& b) { return a.mul(b); });
    return m;
}

inline Model binnat_model(std::uint64_t bound = 1000000) {
    Model m;
    m.sig = semiring_signature();
    m.carriers["num"] = detail::make_carrier<BinNat>(
        [bound](Rng& rng) {
            std::uniform_int_distribution<std::uint64_t> d(0, bound);
            return BinNat::from_u64(d(rng));
        },
        [](const BinNat& a, const BinNat& b) { return a == b; },
        [](const BinNat& a) { return a.to_string(); });
    detail::set_semiring_ops<BinNat>(
        m, BinNat::zero(), BinNat::from_u64(1),
        [](const BinNat& a, const BinNat& b) { return a.add(b); },
        [](const BinNat& a, const BinNat& b) { return a.mul(b); });
    return m;
}

inline Model closedterm_model(int depth = 5) {
    Model m;
    m.sig = semiring_signature();
    m.carriers["num"] = detail::make_carrier<ClosedTermNat>(
        [depth](Rng& rng) { return ClosedTermNat{detail::random_closed_semiring_term(rng, depth)}; },
        [](const ClosedTermNat& a, const ClosedTermNat& b) { return a.equals(b); },
        [](const ClosedTermNat& a) { return term_to_sexpr(a.term); },
        [depth](Rng& rng) {
            // law-equal pair: t and mult(one, t)
            ClosedTermNat t{detail::random_closed_semiring_term(rng, depth)};
            ClosedTermNat u{Term::app("mult", {Term::app("one"), t.term})};
            return std::pair<ClosedTermNat, ClosedTermNat>(t, u);
        });
    detail::set_semiring_ops<ClosedTermNat>(
        m, ClosedTermNat::zero(), ClosedTermNat::one(),
        [](const ClosedTermNat& a, const ClosedTermNat& b) { return a.add(b); },
        [](const ClosedTermNat& a, const ClosedTermNat& b) { return a.mul(b); });
    return m;
}

inline Model intpair_model(std::uint64_t bound = 1000) {
    Model m;
    m.sig = semiring_signature(/*with_neg=*/true);
    m.carriers["num"] = detail::make_carrier<IntPair>(
        [bound](Rng& rng) {
            std::uniform_int_distribution<std::uint64_t> d(0, bound);
            return IntPair{PeanoNat{d(rng)}, PeanoNat{d(rng)}};
        },
        [](const IntPair& a, const IntPair& b) { return a.equals(b); },
        [](const IntPair& a) { return a.to_string(); },
        [bound](Rng& rng) {
            std::uniform_int_distribution<std::uint64_t> d(0, bound);
            IntPair a{PeanoNat{d(rng)}, PeanoNat{d(rng)}};
            std::uint64_t k = d(rng);
            IntPair b{a.pos.add(PeanoNat{k}), a.neg.add(PeanoNat{k})};
            return std::pair<IntPair, IntPair>(a, b);
        });
    detail::set_semiring_ops<IntPair>(
        m, IntPair::from_i64(0), IntPair::from_i64(1),
        [](const IntPair& a, const IntPair& b) { return a.add(b); },
        [](const IntPair& a, const IntPair& b) { return a.mul(b); });
    m.ops["neg"].fn = [](const std::vector<Value>& a) {
        return Value(std::any_cast<const IntPair&>(a[0]).negated());
    };
    return m;
}

// --- Registry construction --------------------------------------------------------

inline NumericRegistry::NumericRegistry() {
    // peano
    {
        NaturalsImpl impl;
        impl.name = "peano";
        impl.zero = Value(PeanoNat::zero());
        impl.one = Value(PeanoNat{1});
        impl.add = [](const Value& a, const Value& b) {
            return Value(std::any_cast<const PeanoNat&>(a).add(std::any_cast<const PeanoNat&>(b)));
        };
        impl.mul = [](const Value& a, const Value& b) {
            return Value(std::any_cast<const PeanoNat&>(a).mul(std::any_cast<const PeanoNat&>(b)));
        };
        impl.from_u64 = [](std::uint64_t v) { return Value(PeanoNat{v}); };
        impl.to_peano = [](const Value& v) { return std::any_cast<const PeanoNat&>(v); };
        impl.from_peano = [](const PeanoNat& n) { return Value(n); };
        impl.show = [](const Value& v) { return std::to_string(std::any_cast<const PeanoNat&>(v).n); };
        impl.parse = [](const std::string& s) { return Value(PeanoNat{std::stoull(s)}); };
        impl.model = peano_model();
        nats_["peano"] = std::move(impl);

        deciders_["peano"].push_back(
            {"decide_generic_via_peano", kGenericPriority, [](const Value& a, const Value& b) {
                 return std::any_cast<const PeanoNat&>(a) == std::any_cast<const PeanoNat&>(b);
             }});

        SpecialOps ops;
        ops.cut_sub = [](const Value& a, const Value& b) {
            auto x = std::any_cast<const PeanoNat&>(a).n, y = std::any_cast<const PeanoNat&>(b).n;
            return Value(PeanoNat{x > y ? x - y : 0});
        };
        ops.distance = [](const Value& a, const Value& b) {
            auto x = std::any_cast<const PeanoNat&>(a).n, y = std::any_cast<const PeanoNat&>(b).n;
            return Value(PeanoNat{x > y ? x - y : y - x});
        };
        ops.doubled = [](const Value& a) { return Value(PeanoNat{std::any_cast<const PeanoNat&>(a).n * 2}); };
        ops.halved = [](const Value& a) -> std::optional<Value> {
            auto x = std::any_cast<const PeanoNat&>(a).n;
            if (x % 2) return std::nullopt;
            return Value(PeanoNat{x / 2});
        };
        special_["peano"] = std::move(ops);
    }

    // binary
    {
        NaturalsImpl impl;
        impl.name = "binary";
        impl.zero = Value(BinNat::zero());
        impl.one = Value(BinNat::from_u64(1));
        impl.add = [](const Value& a, const Value& b) {
            return Value(std::any_cast<const BinNat&>(a).add(std::any_cast<const BinNat&>(b)));
        };
        impl.mul = [](const Value& a, const Value& b) {
            return Value(std::any_cast<const BinNat&>(a).mul(std::any_cast<const BinNat&>(b)));
        };
        impl.from_u64 = [](std::uint64_t v) { return Value(BinNat::from_u64(v)); };
        impl.to_peano = [](const Value& v) { return PeanoNat{std::any_cast<const BinNat&>(v).to_u64()}; };
        // specialized doubling fold: build from the binary expansion
        impl.from_peano = [](const PeanoNat& n) { return Value(BinNat::from_u64(n.n)); };
        impl.show = [](const Value& v) { return std::any_cast<const BinNat&>(v).to_string(); };
        impl.parse = [](const std::string& s) {
            BinNat b;
            for (char c : s) {
                if (c != '0' && c != '1') throw Error(Errc::SyntaxError, "binary digit expected");
                b = b.doubled();
                if (c == '1') b = b.add(BinNat::from_u64(1));
            }
            return Value(b);
        };
        impl.model = binnat_model();
        nats_["binary"] = std::move(impl);

        deciders_["binary"].push_back(
            {"decide_generic_via_peano", kGenericPriority, [](const Value& a, const Value& b) {
                 return std::any_cast<const BinNat&>(a).to_u64() ==
                        std::any_cast<const BinNat&>(b).to_u64();
             }});
        deciders_["binary"].push_back(
            {"decide_binary_specialized", kSpecializedPriority, [](const Value& a, const Value& b) {
                 return std::any_cast<const BinNat&>(a) == std::any_cast<const BinNat&>(b);
             }});

        SpecialOps ops;
        ops.cut_sub = [](const Value& a, const Value& b) {
            return Value(std::any_cast<const BinNat&>(a).cut_sub(std::any_cast<const BinNat&>(b)));
        };
        ops.distance = [](const Value& a, const Value& b) {
            const auto& x = std::any_cast<const BinNat&>(a);
            const auto& y = std::any_cast<const BinNat&>(b);
            return Value(BinNat::less_eq(x, y) ? y.cut_sub(x) : x.cut_sub(y));
        };
        ops.doubled = [](const Value& a) { return Value(std::any_cast<const BinNat&>(a).doubled()); };
        ops.halved = [](const Value& a) -> std::optional<Value> {
            auto h = std::any_cast<const BinNat&>(a).halved();
            if (!h) return std::nullopt;
            return Value(*h);
        };
        special_["binary"] = std::move(ops);
    }

    // closedterm
    {
        NaturalsImpl impl;
        impl.name = "closedterm";
        impl.zero = Value(ClosedTermNat::zero());
        impl.one = Value(ClosedTermNat::one());
        impl.add = [](const Value& a, const Value& b) {
            return Value(std::any_cast<const ClosedTermNat&>(a).add(std::any_cast<const ClosedTermNat&>(b)));
        };
        impl.mul = [](const Value& a, const Value& b) {
            return Value(std::any_cast<const ClosedTermNat&>(a).mul(std::any_cast<const ClosedTermNat&>(b)));
        };
        impl.from_u64 = [](std::uint64_t v) { return Value(ClosedTermNat::from_u64(v)); };
        impl.to_peano = [](const Value& v) {
            Int n = std::any_cast<const ClosedTermNat&>(v).value();
            return PeanoNat{n.convert_to<std::uint64_t>()};
        };
        impl.from_peano = [](const PeanoNat& n) { return Value(ClosedTermNat::from_u64(n.n)); };
        impl.show = [](const Value& v) { return term_to_sexpr(std::any_cast<const ClosedTermNat&>(v).term); };
        impl.parse = [](const std::string& s) { return Value(ClosedTermNat{term_from_sexpr(s)}); };
        impl.model = closedterm_model();
        impl.sample_bound = 1000;  // values stay term-sized
        nats_["closedterm"] = std::move(impl);

        deciders_["closedterm"].push_back(
            {"decide_generic_via_peano", kGenericPriority, [](const Value& a, const Value& b) {
                 return std::any_cast<const ClosedTermNat&>(a).value() ==
                        std::any_cast<const ClosedTermNat&>(b).value();
             }});
        deciders_["closedterm"].push_back(
            {"decide_closedterm_specialized", kSpecializedPriority, [](const Value& a, const Value& b) {
                 return std::any_cast<const ClosedTermNat&>(a).equals(
                     std::any_cast<const ClosedTermNat&>(b));
             }});
    }

    // integers and rationals carry only their setoid deciders
    deciders_["intpair"].push_back(
        {"decide_intpair_specialized", kSpecializedPriority, [](const Value& a, const Value& b) {
             return std::any_cast<const IntPair&>(a).equals(std::any_cast<const IntPair&>(b));
         }});
    deciders_["frac"].push_back(
        {"decide_frac_specialized", kSpecializedPriority, [](const Value& a, const Value& b) {
             return std::any_cast<const Frac&>(a).equals(std::any_cast<const Frac&>(b));
         }});
}

inline const NumericRegistry& NumericRegistry::instance() {
    static NumericRegistry reg;
    return reg;
}

// Generic conversion between registered Naturals implementations: retract to
// the canonical implementation, then the initial arrow out of it.
inline Value convert_naturals(const NaturalsImpl& from, const NaturalsImpl& to, const Value& v) {
    return to.from_peano(from.to_peano(v));
}

// Round-trip check of the isomorphism between two Naturals implementations.
inline bool iso_naturals_check(const NaturalsImpl& a, const NaturalsImpl& b, const Value& va) {
    Value there = convert_naturals(a, b, va);
    Value back = convert_naturals(b, a, there);
    return a.model.equal("num", back, va);
}

// --- Rationals interface checks ------------------------------------------------

struct RationalsReport {
    bool embedding_injective = true;
    bool fractions_surjective = true;
    bool field_laws = true;
    std::size_t samples = 0;
    std::string witness;

    bool pass() const { return embedding_injective && fractions_surjective && field_laws; }
};

inline Frac embed_int(const IntPair& z) { return Frac(z, IntPair::from_i64(1)); }

inline RationalsReport rationals_checks(std::size_t budget = 200, std::uint64_t seed = kDefaultSeed) {
    RationalsReport report;
    report.samples = budget;
    Rng rng(seed);
    std::uniform_int_distribution<std::uint64_t> d(0, 50);
    auto rand_int = [&] { return IntPair{PeanoNat{d(rng)}, PeanoNat{d(rng)}}; };
    auto rand_nonzero = [&] {
        IntPair z = rand_int();
        while (z.is_zero()) z = rand_int();
        return z;
    };
    for (std::size_t i = 0; i < budget; ++i) {
        // (a) embedding injectivity: equal embeddings iff equal sources
        IntPair z1 = rand_int(), z2 = rand_int();
        if (embed_int(z1).equals(embed_int(z2)) != z1.equals(z2)) {
            report.embedding_injective = false;
            report.witness = "injectivity: " + z1.to_string() + " vs " + z2.to_string();
        }
        // (b) surjectivity with constructive witness: p/q = embed(p) * embed(q)^-1
        IntPair p = rand_int(), q = rand_nonzero();
        Frac f(p, q);
        if (!embed_int(p).mul(embed_int(q).inverse()).equals(f)) {
            report.fractions_surjective = false;
            report.witness = "surjectivity: " + f.to_string();
        }
        // (c) field laws on samples
        Frac a(rand_int(), rand_nonzero()), b(rand_int(), rand_nonzero()), c(rand_int(), rand_nonzero());
        Frac one(IntPair::from_i64(1), IntPair::from_i64(1));
        Frac zero(IntPair::from_i64(0), IntPair::from_i64(1));
        bool ok = a.add(b).equals(b.add(a)) && a.mul(b).equals(b.mul(a)) &&
                  a.add(b.add(c)).equals(a.add(b).add(c)) &&
                  a.mul(b.mul(c)).equals(a.mul(b).mul(c)) &&
                  a.mul(b.add(c)).equals(a.mul(b).add(a.mul(c))) &&
                  a.add(zero).equals(a) && a.mul(one).equals(a) &&
                  a.add(a.negated()).equals(zero);
        if (ok && !a.is_zero()) ok = a.mul(a.inverse()).equals(one);
        if (!ok) {
            report.field_laws = false;
            report.witness = "field law at " + a.to_string();
        }
    }
    return report;
}

}  // namespace alg
