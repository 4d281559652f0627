#pragma once

#include <any>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "alg/error.hpp"
#include "alg/term.hpp"
#include "alg/union_find.hpp"

namespace alg {

// Carrier elements are type-erased. Finite carriers store an index
// (std::size_t) into the element list; sampled carriers store whatever the
// implementation uses (PeanoNat, BinNat, a closed Term, ...).
using Value = std::any;
using Rng = std::mt19937_64;

inline std::size_t idx(const Value& v) { return std::any_cast<std::size_t>(v); }
inline Value val(std::size_t i) { return Value(i); }

// Explicit element list with a setoid partition. The partition is built with
// union-find, so reflexivity/symmetry/transitivity hold by construction.
struct FiniteCarrier {
    std::vector<std::string> names;
    UnionFind classes;

    static FiniteCarrier discrete(std::vector<std::string> ns) {
        FiniteCarrier c;
        c.classes = UnionFind(ns.size());
        c.names = std::move(ns);
        return c;
    }

    std::size_t size() const { return names.size(); }
};

// Generator-plus-predicate carrier for infinite (or just large) sorts.
struct SampledCarrier {
    std::function<Value(Rng&)> sample;
    std::function<bool(const Value&, const Value&)> equal;
    std::function<std::string(const Value&)> show;
    // Produces a setoid-equal pair of (preferably distinct) representatives,
    // for propriety sampling. Defaults to a duplicated sample.
    std::function<std::pair<Value, Value>(Rng&)> sample_equal_pair;
};

using Carrier = std::variant<FiniteCarrier, SampledCarrier>;

struct OpImpl {
    std::function<Value(const std::vector<Value>&)> fn;
    // Finite models additionally keep the flat row-major result table, used
    // for serialization and derived constructions.
    std::vector<std::size_t> table;
};

struct Model {
    Signature sig;
    std::map<std::string, Carrier> carriers;
    std::map<std::string, OpImpl> ops;

    bool finite() const {
        for (const auto& [s, c] : carriers)
            if (!std::holds_alternative<FiniteCarrier>(c)) return false;
        return true;
    }

    const Carrier& carrier(const std::string& sort) const {
        auto it = carriers.find(sort);
        if (it == carriers.end()) throw Error(Errc::SortMismatch, "no carrier for sort " + sort);
        return it->second;
    }

    const FiniteCarrier& finite_carrier(const std::string& sort) const {
        const Carrier& c = carrier(sort);
        if (!std::holds_alternative<FiniteCarrier>(c))
            throw Error(Errc::Unsupported, "sort " + sort + " is not finite");
        return std::get<FiniteCarrier>(c);
    }

    std::size_t carrier_size(const std::string& sort) const { return finite_carrier(sort).size(); }

    bool equal(const std::string& sort, const Value& a, const Value& b) const {
        const Carrier& c = carrier(sort);
        if (const auto* f = std::get_if<FiniteCarrier>(&c)) return f->classes.same(idx(a), idx(b));
        return std::get<SampledCarrier>(c).equal(a, b);
    }

    std::string show(const std::string& sort, const Value& v) const {
        const Carrier& c = carrier(sort);
        if (const auto* f = std::get_if<FiniteCarrier>(&c)) return f->names[idx(v)];
        return std::get<SampledCarrier>(c).show(v);
    }

    Value sample(const std::string& sort, Rng& rng) const {
        const Carrier& c = carrier(sort);
        if (const auto* f = std::get_if<FiniteCarrier>(&c)) {
            std::uniform_int_distribution<std::size_t> d(0, f->size() - 1);
            return val(d(rng));
        }
        return std::get<SampledCarrier>(c).sample(rng);
    }

    std::pair<Value, Value> sample_equal_pair(const std::string& sort, Rng& rng) const {
        const Carrier& c = carrier(sort);
        if (const auto* f = std::get_if<FiniteCarrier>(&c)) {
            // pick an element, then a uniformly random member of its class
            std::uniform_int_distribution<std::size_t> d(0, f->size() - 1);
            std::size_t a = d(rng);
            std::vector<std::size_t> cls;
            for (std::size_t i = 0; i < f->size(); ++i)
                if (f->classes.same(a, i)) cls.push_back(i);
            std::uniform_int_distribution<std::size_t> d2(0, cls.size() - 1);
            return {val(a), val(cls[d2(rng)])};
        }
        const auto& s = std::get<SampledCarrier>(c);
        if (s.sample_equal_pair) return s.sample_equal_pair(rng);
        Value v = s.sample(rng);
        return {v, v};
    }

    Value apply(const std::string& op, const std::vector<Value>& args) const {
        auto it = ops.find(op);
        if (it == ops.end()) throw Error(Errc::UnknownOp, op);
        return it->second.fn(args);
    }
};

// --- Finite model construction ------------------------------------------

// Flat row-major index of an argument tuple, given per-position carrier sizes.
inline std::size_t flat_index(const std::vector<std::size_t>& dims,
                              const std::vector<std::size_t>& tuple) {
    std::size_t i = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) i = i * dims[k] + tuple[k];
    return i;
}

inline std::vector<std::size_t> op_dims(const Model& m, const OpType& ty) {
    std::vector<std::size_t> dims;
    for (const auto& s : ty.args) dims.push_back(m.carrier_size(s));
    return dims;
}

// Installs a finite op from its flat table, wiring up the table-lookup fn.
inline void set_table_op(Model& m, const std::string& sym, std::vector<std::size_t> table) {
    const OpType& ty = m.sig.op_type(sym);
    std::vector<std::size_t> dims = op_dims(m, ty);
    std::size_t expect = 1;
    for (std::size_t d : dims) expect *= d;
    if (table.size() != expect)
        throw Error(Errc::BadFile, "table for " + sym + " has " + std::to_string(table.size()) +
                                       " entries, expected " + std::to_string(expect));
    OpImpl impl;
    impl.table = std::move(table);
    auto tbl = std::make_shared<const std::vector<std::size_t>>(impl.table);
    impl.fn = [tbl, dims](const std::vector<Value>& args) {
        std::vector<std::size_t> tuple;
        tuple.reserve(args.size());
        for (const Value& a : args) tuple.push_back(idx(a));
        return val((*tbl)[flat_index(dims, tuple)]);
    };
    m.ops[sym] = std::move(impl);
}

// Z/k with + and * mod k: the workhorse finite semiring (and ring).
inline Model make_zmod(std::size_t k, bool with_neg = false) {
    Model m;
    m.sig.sorts = {"num"};
    m.sig.ops["plus"] = {{"num", "num"}, "num"};
    m.sig.ops["mult"] = {{"num", "num"}, "num"};
    m.sig.ops["zero"] = {{}, "num"};
    m.sig.ops["one"] = {{}, "num"};
    if (with_neg) m.sig.ops["neg"] = {{"num"}, "num"};
    std::vector<std::string> names;
    for (std::size_t i = 0; i < k; ++i) names.push_back(std::to_string(i));
    m.carriers["num"] = FiniteCarrier::discrete(std::move(names));
    std::vector<std::size_t> plus(k * k), mult(k * k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            plus[a * k + b] = (a + b) % k;
            mult[a * k + b] = (a * b) % k;
        }
    set_table_op(m, "plus", std::move(plus));
    set_table_op(m, "mult", std::move(mult));
    set_table_op(m, "zero", {0});
    set_table_op(m, "one", {1 % k});
    if (with_neg) {
        std::vector<std::size_t> neg(k);
        for (std::size_t a = 0; a < k; ++a) neg[a] = (k - a) % k;
        set_table_op(m, "neg", std::move(neg));
    }
    return m;
}

// Additive cyclic monoid Z/k over the monoid signature {op/2, unit/0}.
inline Model make_cyclic_monoid(std::size_t k) {
    Model m;
    m.sig.sorts = {"num"};
    m.sig.ops["op"] = {{"num", "num"}, "num"};
    m.sig.ops["unit"] = {{}, "num"};
    std::vector<std::string> names;
    for (std::size_t i = 0; i < k; ++i) names.push_back(std::to_string(i));
    m.carriers["num"] = FiniteCarrier::discrete(std::move(names));
    std::vector<std::size_t> add(k * k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) add[a * k + b] = (a + b) % k;
    set_table_op(m, "op", std::move(add));
    set_table_op(m, "unit", {0});
    return m;
}

// --- Term evaluation ------------------------------------------------------

using Assignment = std::map<int, Value>;

inline Value eval_term(const Model& m, const Assignment& assignment, const Term& t) {
    if (t.is_var) {
        auto it = assignment.find(t.var);
        if (it == assignment.end())
            throw Error(Errc::MissingAssignment, "variable " + std::to_string(t.var));
        return it->second;
    }
    std::vector<Value> args;
    args.reserve(t.args.size());
    for (const Term& a : t.args) args.push_back(eval_term(m, assignment, a));
    return m.apply(t.op, args);
}

// --- Assignment enumeration ----------------------------------------------

// Calls fn with every assignment of finite-carrier elements to ctx variables.
// Returns false early if fn returns false.
template <typename Fn>
bool for_each_assignment(const Model& m, const VarContext& ctx, Fn&& fn) {
    std::vector<std::size_t> dims;
    for (const auto& s : ctx.sorts) dims.push_back(m.carrier_size(s));
    std::vector<std::size_t> tuple(dims.size(), 0);
    while (true) {
        Assignment a;
        for (std::size_t i = 0; i < tuple.size(); ++i) a[static_cast<int>(i)] = val(tuple[i]);
        if (!fn(a)) return false;
        std::size_t p = tuple.size();
        while (p > 0) {
            --p;
            if (++tuple[p] < dims[p]) break;
            tuple[p] = 0;
            if (p == 0) return true;
        }
        if (tuple.empty()) return true;
    }
}

inline Assignment sample_assignment(const Model& m, const VarContext& ctx, Rng& rng) {
    Assignment a;
    for (std::size_t i = 0; i < ctx.size(); ++i)
        a[static_cast<int>(i)] = m.sample(ctx.sorts[i], rng);
    return a;
}

// --- Propriety (is_algebra) ------------------------------------------------

struct CheckResult {
    bool ok = true;
    std::string witness;  // human-readable description on failure

    explicit operator bool() const { return ok; }
};

namespace detail {

template <typename Fn>
bool for_each_tuple(const std::vector<std::size_t>& dims, Fn&& fn) {
    std::vector<std::size_t> t(dims.size(), 0);
    while (true) {
        if (!fn(t)) return false;
        std::size_t p = t.size();
        bool done = t.empty();
        while (p > 0) {
            --p;
            if (++t[p] < dims[p]) break;
            t[p] = 0;
            if (p == 0) done = true;
        }
        if (done) return true;
    }
}

}  // namespace detail

// Checks that every operation maps setoid-equal argument tuples to
// setoid-equal results. Exhaustive on finite models, sampled otherwise.
inline CheckResult is_algebra(const Model& m, std::size_t samples = 200, std::uint64_t seed = 0) {
    for (const auto& [sym, ty] : m.sig.ops) {
        if (m.finite()) {
            std::vector<std::size_t> dims = op_dims(m, ty);
            bool ok = detail::for_each_tuple(dims, [&](const std::vector<std::size_t>& a) {
                return detail::for_each_tuple(dims, [&](const std::vector<std::size_t>& b) {
                    for (std::size_t i = 0; i < a.size(); ++i) {
                        const FiniteCarrier& c = m.finite_carrier(ty.args[i]);
                        if (!c.classes.same(a[i], b[i])) return true;  // not pointwise equal
                    }
                    std::vector<Value> va, vb;
                    for (std::size_t i : a) va.push_back(val(i));
                    for (std::size_t i : b) vb.push_back(val(i));
                    return m.equal(ty.result, m.apply(sym, va), m.apply(sym, vb));
                });
            });
            if (!ok) return {false, "operation " + sym + " does not respect the setoid equality"};
        } else {
            Rng rng(seed ^ std::hash<std::string>{}(sym));
            for (std::size_t n = 0; n < samples; ++n) {
                std::vector<Value> a, b;
                for (const auto& s : ty.args) {
                    auto [x, y] = m.sample_equal_pair(s, rng);
                    a.push_back(x);
                    b.push_back(y);
                }
                if (!m.equal(ty.result, m.apply(sym, a), m.apply(sym, b))) {
                    std::string w = "operation " + sym + " not proper on (";
                    for (std::size_t i = 0; i < a.size(); ++i)
                        w += (i ? ", " : "") + m.show(ty.args[i], a[i]) + "~" + m.show(ty.args[i], b[i]);
                    return {false, w + ")"};
                }
            }
        }
    }
    return {};
}

// --- Product algebra --------------------------------------------------------

// Componentwise product of two finite models over the same signature.
// Element (i, j) is stored at index i * |B| + j.
inline Model product(const Model& ma, const Model& mb) {
    if (ma.sig != mb.sig) throw Error(Errc::SignatureMismatch, "product of unlike signatures");
    if (!ma.finite() || !mb.finite())
        throw Error(Errc::Unsupported, "product requires finite models");
    Model m;
    m.sig = ma.sig;
    for (const auto& sort : ma.sig.sorts) {
        const FiniteCarrier& ca = ma.finite_carrier(sort);
        const FiniteCarrier& cb = mb.finite_carrier(sort);
        FiniteCarrier c;
        std::size_t nb = cb.size();
        for (std::size_t i = 0; i < ca.size(); ++i)
            for (std::size_t j = 0; j < nb; ++j)
                c.names.push_back("(" + ca.names[i] + "," + cb.names[j] + ")");
        c.classes = UnionFind(c.names.size());
        for (std::size_t i = 0; i < ca.size(); ++i)
            for (std::size_t j = 0; j < nb; ++j)
                for (std::size_t i2 = 0; i2 < ca.size(); ++i2)
                    for (std::size_t j2 = 0; j2 < nb; ++j2)
                        if (ca.classes.same(i, i2) && cb.classes.same(j, j2))
                            c.classes.unite(i * nb + j, i2 * nb + j2);
        m.carriers[sort] = std::move(c);
    }
    for (const auto& [sym, ty] : ma.sig.ops) {
        std::vector<std::size_t> dims;
        for (const auto& s : ty.args)
            dims.push_back(ma.carrier_size(s) * mb.carrier_size(s));
        std::size_t total = 1;
        for (std::size_t d : dims) total *= d;
        std::vector<std::size_t> table(total);
        std::size_t nb_res = mb.carrier_size(ty.result);
        detail::for_each_tuple(dims, [&](const std::vector<std::size_t>& t) {
            std::vector<Value> aa, bb;
            for (std::size_t k = 0; k < t.size(); ++k) {
                std::size_t nb = mb.carrier_size(ty.args[k]);
                aa.push_back(val(t[k] / nb));
                bb.push_back(val(t[k] % nb));
            }
            std::size_t r = idx(ma.apply(sym, aa)) * nb_res + idx(mb.apply(sym, bb));
            table[flat_index(dims, t)] = r;
            return true;
        });
        set_table_op(m, sym, std::move(table));
    }
    return m;
}

}  // namespace alg
