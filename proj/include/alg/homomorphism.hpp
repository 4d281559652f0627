#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "alg/model.hpp"

namespace alg {

using SortFn = std::map<std::string, std::function<Value(const Value&)>>;

// A verified structure-preserving map. Only constructible through
// check_homomorphism, so holding one is evidence that the checks passed
// (exhaustively for finite sources, sampled otherwise).
class Homomorphism {
  public:
    const Model& source() const { return source_; }
    const Model& target() const { return target_; }

    Value map(const std::string& sort, const Value& v) const { return fn_.at(sort)(v); }

    friend Homomorphism check_homomorphism(const Model&, const Model&, SortFn, std::size_t,
                                           std::uint64_t);

  private:
    Homomorphism(Model src, Model tgt, SortFn fn)
        : source_(std::move(src)), target_(std::move(tgt)), fn_(std::move(fn)) {}

    Model source_;
    Model target_;
    SortFn fn_;
};

// Verifies propriety of f and preservation of every operation; throws
// NotAHomomorphism with the offending operation and witness otherwise.
inline Homomorphism check_homomorphism(const Model& ma, const Model& mb, SortFn f,
                                       std::size_t samples = 200, std::uint64_t seed = 1) {
    if (ma.sig != mb.sig)
        throw Error(Errc::SignatureMismatch, "homomorphism endpoints have unlike signatures");

    // propriety: a ~ a' implies f a ~ f a'
    for (const auto& sort : ma.sig.sorts) {
        const auto& fs = f.at(sort);
        if (ma.finite()) {
            const FiniteCarrier& c = ma.finite_carrier(sort);
            for (std::size_t i = 0; i < c.size(); ++i)
                for (std::size_t j = 0; j < c.size(); ++j)
                    if (c.classes.same(i, j) && !mb.equal(sort, fs(val(i)), fs(val(j))))
                        throw Error(Errc::NotAHomomorphism,
                                    "f not proper on " + c.names[i] + " ~ " + c.names[j]);
        } else {
            Rng rng(seed);
            for (std::size_t n = 0; n < samples; ++n) {
                auto [a, b] = ma.sample_equal_pair(sort, rng);
                if (!mb.equal(sort, fs(a), fs(b)))
                    throw Error(Errc::NotAHomomorphism, "f not proper on " + ma.show(sort, a) +
                                                            " ~ " + ma.show(sort, b));
            }
        }
    }

    // preservation: f(op_A(xs)) ~ op_B(map f xs)
    for (const auto& [sym, ty] : ma.sig.ops) {
        auto check_tuple = [&](const std::vector<Value>& xs) {
            std::vector<Value> fxs;
            for (std::size_t i = 0; i < xs.size(); ++i) fxs.push_back(f.at(ty.args[i])(xs[i]));
            Value lhs = f.at(ty.result)(ma.apply(sym, xs));
            Value rhs = mb.apply(sym, fxs);
            if (!mb.equal(ty.result, lhs, rhs)) {
                std::string w = sym + "(";
                for (std::size_t i = 0; i < xs.size(); ++i)
                    w += (i ? ", " : "") + ma.show(ty.args[i], xs[i]);
                throw Error(Errc::NotAHomomorphism, "not preserved at " + w + ")");
            }
        };
        if (ma.finite()) {
            std::vector<std::size_t> dims = op_dims(ma, ty);
            detail::for_each_tuple(dims, [&](const std::vector<std::size_t>& t) {
                std::vector<Value> xs;
                for (std::size_t i : t) xs.push_back(val(i));
                check_tuple(xs);
                return true;
            });
        } else {
            Rng rng(seed ^ std::hash<std::string>{}(sym));
            for (std::size_t n = 0; n < samples; ++n) {
                std::vector<Value> xs;
                for (const auto& s : ty.args) xs.push_back(ma.sample(s, rng));
                check_tuple(xs);
            }
        }
    }
    return Homomorphism(ma, mb, std::move(f));
}

// --- Congruence relations ---------------------------------------------------

// Per-sort binary relation on a model's carrier. Finite sorts store a full
// boolean table (so non-equivalences can be represented and rejected);
// sampled sorts use a predicate.
struct SortRelation {
    std::size_t n = 0;           // 0 means predicate form
    std::vector<char> table;     // n*n entries when n > 0
    std::function<bool(const Value&, const Value&)> pred;

    bool holds(const Value& a, const Value& b) const {
        if (n > 0) return table[idx(a) * n + idx(b)] != 0;
        return pred(a, b);
    }

    static SortRelation from_partition(std::size_t n, const std::vector<std::vector<std::size_t>>& classes) {
        SortRelation r;
        r.n = n;
        r.table.assign(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) r.table[i * n + i] = 1;
        for (const auto& cls : classes)
            for (std::size_t a : cls)
                for (std::size_t b : cls) r.table[a * n + b] = 1;
        return r;
    }
};

struct CongruenceRel {
    std::map<std::string, SortRelation> rel;

    bool holds(const std::string& sort, const Value& a, const Value& b) const {
        return rel.at(sort).holds(a, b);
    }
};

// Kernel of a homomorphism: a ~ b iff f(a) = f(b) in the target setoid.
inline CongruenceRel kernel_congruence(const Homomorphism& h) {
    CongruenceRel r;
    const Model& src = h.source();
    const Model& tgt = h.target();
    for (const auto& sort : src.sig.sorts) {
        SortRelation sr;
        if (src.finite()) {
            std::size_t n = src.carrier_size(sort);
            sr.n = n;
            sr.table.assign(n * n, 0);
            std::vector<Value> img;
            for (std::size_t i = 0; i < n; ++i) img.push_back(h.map(sort, val(i)));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    sr.table[i * n + j] = tgt.equal(sort, img[i], img[j]) ? 1 : 0;
        } else {
            sr.pred = [h, sort](const Value& a, const Value& b) {
                return h.target().equal(sort, h.map(sort, a), h.map(sort, b));
            };
        }
        r.rel[sort] = std::move(sr);
    }
    return r;
}

// Equivalence laws + propriety over the base setoid + operations respect the
// relation (i.e. quotient operations are well-defined). Exhaustive on finite
// models, sampled otherwise.
inline CheckResult is_congruence(const Model& m, const CongruenceRel& r, std::size_t samples = 200,
                                 std::uint64_t seed = 2) {
    for (const auto& sort : m.sig.sorts) {
        const SortRelation& sr = r.rel.at(sort);
        if (m.finite()) {
            const FiniteCarrier& c = m.finite_carrier(sort);
            std::size_t n = c.size();
            for (std::size_t i = 0; i < n; ++i)
                if (!sr.holds(val(i), val(i)))
                    return {false, "not reflexive at " + c.names[i]};
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (sr.holds(val(i), val(j)) && !sr.holds(val(j), val(i)))
                        return {false, "not symmetric at (" + c.names[i] + "," + c.names[j] + ")"};
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t k = 0; k < n; ++k)
                        if (sr.holds(val(i), val(j)) && sr.holds(val(j), val(k)) &&
                            !sr.holds(val(i), val(k)))
                            return {false, "not transitive at (" + c.names[i] + "," + c.names[j] +
                                               "," + c.names[k] + ")"};
            // propriety over the base setoid
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t a2 = 0; a2 < n; ++a2) {
                    if (!c.classes.same(a, a2)) continue;
                    for (std::size_t b = 0; b < n; ++b)
                        if (sr.holds(val(a), val(b)) != sr.holds(val(a2), val(b)))
                            return {false, "not proper over base setoid at " + c.names[a] + " ~ " +
                                               c.names[a2]};
                }
        } else {
            Rng rng(seed);
            for (std::size_t t = 0; t < samples; ++t) {
                Value a = m.sample(sort, rng);
                if (!sr.holds(a, a)) return {false, "not reflexive at " + m.show(sort, a)};
                Value b = m.sample(sort, rng);
                if (sr.holds(a, b) && !sr.holds(b, a))
                    return {false, "not symmetric at (" + m.show(sort, a) + "," + m.show(sort, b) + ")"};
                auto [x, y] = m.sample_equal_pair(sort, rng);
                if (sr.holds(a, x) != sr.holds(a, y))
                    return {false, "not proper over base setoid at " + m.show(sort, x)};
            }
        }
    }
    // operations respect the relation
    for (const auto& [sym, ty] : m.sig.ops) {
        if (m.finite()) {
            std::vector<std::size_t> dims = op_dims(m, ty);
            CheckResult res;
            detail::for_each_tuple(dims, [&](const std::vector<std::size_t>& a) {
                return detail::for_each_tuple(dims, [&](const std::vector<std::size_t>& b) {
                    for (std::size_t i = 0; i < a.size(); ++i)
                        if (!r.holds(ty.args[i], val(a[i]), val(b[i]))) return true;
                    std::vector<Value> va, vb;
                    for (std::size_t i : a) va.push_back(val(i));
                    for (std::size_t i : b) vb.push_back(val(i));
                    if (r.holds(ty.result, m.apply(sym, va), m.apply(sym, vb))) return true;
                    res = {false, "operation " + sym + " does not respect the relation"};
                    return false;
                });
            });
            if (!res.ok) return res;
        } else {
            Rng rng(seed ^ std::hash<std::string>{}(sym));
            for (std::size_t t = 0; t < samples; ++t) {
                std::vector<Value> a, b;
                bool related = true;
                for (const auto& s : ty.args) {
                    Value x = m.sample(s, rng), y = m.sample(s, rng);
                    if (!r.holds(s, x, y)) {
                        // fall back to a pair that is related
                        y = x;
                    }
                    related = related && r.holds(s, x, y);
                    a.push_back(x);
                    b.push_back(y);
                }
                if (related && !r.holds(ty.result, m.apply(sym, a), m.apply(sym, b)))
                    return {false, "operation " + sym + " does not respect the relation"};
            }
        }
    }
    return {};
}

// The classical characterization: the relation, read as a set of pairs, must
// be a proper equivalence whose pair set is closed under the operations of
// the product algebra. Agrees with is_congruence on finite models.
inline CheckResult congruence_via_product(const Model& m, const CongruenceRel& r) {
    if (!m.finite()) throw Error(Errc::Unsupported, "congruence_via_product requires a finite model");
    // equivalence + propriety checks, as for the direct route
    for (const auto& sort : m.sig.sorts) {
        const SortRelation& sr = r.rel.at(sort);
        const FiniteCarrier& c = m.finite_carrier(sort);
        std::size_t n = c.size();
        for (std::size_t i = 0; i < n; ++i)
            if (!sr.holds(val(i), val(i))) return {false, "not reflexive"};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (sr.holds(val(i), val(j)) != sr.holds(val(j), val(i)))
                    return {false, "not symmetric"};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    if (sr.holds(val(i), val(j)) && sr.holds(val(j), val(k)) &&
                        !sr.holds(val(i), val(k)))
                        return {false, "not transitive"};
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t a2 = 0; a2 < n; ++a2)
                if (c.classes.same(a, a2))
                    for (std::size_t b = 0; b < n; ++b)
                        if (sr.holds(val(a), val(b)) != sr.holds(val(a2), val(b)))
                            return {false, "not proper over base setoid"};
    }
    // pair-set closure under the product algebra's operations
    Model prod = product(m, m);
    for (const auto& [sym, ty] : m.sig.ops) {
        std::vector<std::size_t> dims;
        for (const auto& s : ty.args) dims.push_back(m.carrier_size(s) * m.carrier_size(s));
        CheckResult res;
        detail::for_each_tuple(dims, [&](const std::vector<std::size_t>& t) {
            // restrict to tuples whose components lie in the pair set
            std::vector<Value> xs;
            for (std::size_t i = 0; i < t.size(); ++i) {
                std::size_t nb = m.carrier_size(ty.args[i]);
                if (!r.holds(ty.args[i], val(t[i] / nb), val(t[i] % nb))) return true;
                xs.push_back(val(t[i]));
            }
            std::size_t out = idx(prod.apply(sym, xs));
            std::size_t nb = m.carrier_size(ty.result);
            if (r.holds(ty.result, val(out / nb), val(out % nb))) return true;
            res = {false, "pair set not closed under " + sym};
            return false;
        });
        if (!res.ok) return res;
    }
    return {};
}

// Quotient by a congruence: same carriers and operations, setoid equality
// coarsened to the relation. No canonical representatives are chosen.
inline Model quotient(const Model& m, const CongruenceRel& r) {
    CheckResult c = is_congruence(m, r);
    if (!c.ok) throw Error(Errc::NotACongruence, c.witness);
    Model q = m;
    for (const auto& sort : m.sig.sorts) {
        if (!m.finite()) {
            const SortRelation& sr = r.rel.at(sort);
            SampledCarrier sc = std::get<SampledCarrier>(q.carriers[sort]);
            sc.equal = [sr](const Value& a, const Value& b) { return sr.holds(a, b); };
            q.carriers[sort] = std::move(sc);
            continue;
        }
        FiniteCarrier fc = m.finite_carrier(sort);
        std::size_t n = fc.size();
        UnionFind uf(n);
        const SortRelation& sr = r.rel.at(sort);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (sr.holds(val(i), val(j))) uf.unite(i, j);
        fc.classes = std::move(uf);
        q.carriers[sort] = std::move(fc);
    }
    return q;
}

// --- Subalgebras --------------------------------------------------------------

struct Subalgebra {
    Model model;
    // per sort: sub-carrier index -> index in the parent model
    std::map<std::string, std::vector<std::size_t>> embed;
};

// Restricts a finite model to a membership predicate; rejects non-proper
// predicates and subsets not closed under the operations.
inline Subalgebra subalgebra(const Model& m,
                             const std::map<std::string, std::vector<char>>& member) {
    if (!m.finite()) throw Error(Errc::Unsupported, "subalgebra requires a finite model");
    Subalgebra sub;
    sub.model.sig = m.sig;
    std::map<std::string, std::vector<std::size_t>> old_to_new;
    for (const auto& sort : m.sig.sorts) {
        const FiniteCarrier& c = m.finite_carrier(sort);
        const std::vector<char>& p = member.at(sort);
        // propriety of the predicate w.r.t. the base setoid
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < c.size(); ++j)
                if (c.classes.same(i, j) && p[i] != p[j])
                    throw Error(Errc::NotProper,
                                "membership differs on " + c.names[i] + " ~ " + c.names[j]);
        std::vector<std::size_t> o2n(c.size(), UnionFind::npos);
        FiniteCarrier nc;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (p[i]) {
                o2n[i] = nc.names.size();
                nc.names.push_back(c.names[i]);
                sub.embed[sort].push_back(i);
            }
        nc.classes = UnionFind(nc.names.size());
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < c.size(); ++j)
                if (p[i] && p[j] && c.classes.same(i, j)) nc.classes.unite(o2n[i], o2n[j]);
        sub.model.carriers[sort] = std::move(nc);
        old_to_new[sort] = std::move(o2n);
    }
    for (const auto& [sym, ty] : m.sig.ops) {
        std::vector<std::size_t> dims;
        for (const auto& s : ty.args) dims.push_back(sub.embed[s].size());
        std::size_t total = 1;
        for (std::size_t d : dims) total *= d;
        std::vector<std::size_t> table(total);
        detail::for_each_tuple(dims, [&](const std::vector<std::size_t>& t) {
            std::vector<Value> xs;
            std::string w;
            for (std::size_t i = 0; i < t.size(); ++i) {
                std::size_t old = sub.embed[ty.args[i]][t[i]];
                xs.push_back(val(old));
                w += (i ? ", " : "") + m.finite_carrier(ty.args[i]).names[old];
            }
            std::size_t out = idx(m.apply(sym, xs));
            std::size_t nw = old_to_new[ty.result][out];
            if (nw == UnionFind::npos)
                throw Error(Errc::NotClosed, sym + "(" + w + ") escapes the subset");
            table[flat_index(dims, t)] = nw;
            return true;
        });
        set_table_op(sub.model, sym, std::move(table));
    }
    return sub;
}

struct ImageAlgebra {
    Subalgebra sub;
    // per sort: sub-carrier index -> one witness preimage in the source
    std::map<std::string, std::vector<std::size_t>> witness;
};

// The image of f as a subalgebra of the target. Each image element carries
// one witness preimage (first found in enumeration order); `back` of the
// first homomorphism theorem needs it.
inline ImageAlgebra image_subalgebra(const Homomorphism& h) {
    const Model& src = h.source();
    const Model& tgt = h.target();
    if (!src.finite() || !tgt.finite())
        throw Error(Errc::Unsupported, "image_subalgebra requires finite models");
    std::map<std::string, std::vector<char>> member;
    std::map<std::string, std::vector<std::size_t>> wit_by_target;
    for (const auto& sort : src.sig.sorts) {
        std::size_t nt = tgt.carrier_size(sort);
        std::vector<char> p(nt, 0);
        std::vector<std::size_t> w(nt, UnionFind::npos);
        for (std::size_t b = 0; b < nt; ++b)
            for (std::size_t a = 0; a < src.carrier_size(sort); ++a)
                if (tgt.equal(sort, h.map(sort, val(a)), val(b))) {
                    p[b] = 1;
                    w[b] = a;
                    break;
                }
        member[sort] = std::move(p);
        wit_by_target[sort] = std::move(w);
    }
    ImageAlgebra img;
    img.sub = subalgebra(tgt, member);
    for (const auto& sort : src.sig.sorts) {
        std::vector<std::size_t> w;
        for (std::size_t old : img.sub.embed[sort]) w.push_back(wit_by_target[sort][old]);
        img.witness[sort] = std::move(w);
    }
    return img;
}

// --- First homomorphism theorem ----------------------------------------------

struct IsoReport {
    std::optional<Homomorphism> forth;  // quotient -> image
    std::optional<Homomorphism> back;   // image -> quotient
    bool verified = false;
    std::vector<std::string> failures;
    Model quotient_model;
    ImageAlgebra image;
};

// Builds quotient(source, ker f) and image(f), the two arrows between them,
// and verifies that they are mutually inverse homomorphisms.
inline IsoReport first_homomorphism(const Homomorphism& h) {
    const Model& src = h.source();
    if (!src.finite()) throw Error(Errc::Unsupported, "first_homomorphism requires a finite source");
    IsoReport report;
    CongruenceRel ker = kernel_congruence(h);
    report.quotient_model = quotient(src, ker);
    report.image = image_subalgebra(h);
    const Model& q = report.quotient_model;
    const Model& im = report.image.sub.model;

    // forth: a |-> the image element equal to f(a); back: image element |-> witness
    SortFn forth_fn, back_fn;
    for (const auto& sort : src.sig.sorts) {
        const auto& embed = report.image.sub.embed.at(sort);
        const auto& wit = report.image.witness.at(sort);
        forth_fn[sort] = [h, embed, sort](const Value& a) {
            Value fa = h.map(sort, a);
            for (std::size_t j = 0; j < embed.size(); ++j)
                if (h.target().equal(sort, fa, val(embed[j]))) return val(j);
            throw Error(Errc::NotFound, "image element for " + sort);
        };
        back_fn[sort] = [wit](const Value& b) { return val(wit[idx(b)]); };
    }

    report.verified = true;
    try {
        report.forth = check_homomorphism(q, im, forth_fn);
    } catch (const Error& e) {
        report.verified = false;
        report.failures.push_back(std::string("forth: ") + e.what());
    }
    try {
        report.back = check_homomorphism(im, q, back_fn);
    } catch (const Error& e) {
        report.verified = false;
        report.failures.push_back(std::string("back: ") + e.what());
    }
    for (const auto& sort : src.sig.sorts) {
        for (std::size_t a = 0; a < src.carrier_size(sort); ++a) {
            Value round = back_fn[sort](forth_fn[sort](val(a)));
            if (!q.equal(sort, round, val(a))) {
                report.verified = false;
                report.failures.push_back("back(forth(" + src.finite_carrier(sort).names[a] +
                                          ")) lands in a different class");
            }
        }
        for (std::size_t b = 0; b < im.carrier_size(sort); ++b) {
            Value round = forth_fn[sort](back_fn[sort](val(b)));
            if (!im.equal(sort, round, val(b))) {
                report.verified = false;
                report.failures.push_back("forth(back(...)) mismatch in the image");
            }
        }
    }
    return report;
}

}  // namespace alg
