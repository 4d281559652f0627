#pragma once

#include "json.hpp"
#include <string>
#include <vector>

#include "alg/homomorphism.hpp"
#include "alg/model.hpp"
#include "alg/theory.hpp"

namespace alg {

using Json = nlohmann::json;

// --- Signatures -------------------------------------------------------------

inline Json signature_to_json(const Signature& sig) {
    Json ops = Json::object();
    for (const auto& [sym, ty] : sig.ops) ops[sym] = {{"args", ty.args}, {"result", ty.result}};
    return {{"sorts", sig.sorts}, {"ops", ops}};
}

inline Signature signature_from_json(const Json& j) {
    Signature sig;
    if (!j.is_object() || !j.contains("sorts") || !j.contains("ops"))
        throw Error(Errc::BadFile, "signature needs `sorts` and `ops`");
    sig.sorts = j.at("sorts").get<std::vector<std::string>>();
    for (const auto& [sym, tj] : j.at("ops").items()) {
        OpType ty;
        ty.args = tj.at("args").get<std::vector<std::string>>();
        ty.result = tj.at("result").get<std::string>();
        for (const auto& s : ty.args)
            if (!sig.has_sort(s)) throw Error(Errc::BadFile, "op " + sym + " uses unknown sort " + s);
        if (!sig.has_sort(ty.result))
            throw Error(Errc::BadFile, "op " + sym + " uses unknown sort " + ty.result);
        sig.ops[sym] = std::move(ty);
    }
    return sig;
}

// --- Theories ---------------------------------------------------------------
// {sig: {...}, laws: [{name?, ctx: [sorts], premises: [[l, r], ...],
//  conclusion: [l, r]}]} with terms as S-expressions.

inline Json theory_to_json(const EquationalTheory& th) {
    Json laws = Json::array();
    for (const Entailment& law : th.laws) {
        Json prem = Json::array();
        for (const auto& [l, r] : law.premises)
            prem.push_back({term_to_sexpr(l), term_to_sexpr(r)});
        laws.push_back({{"name", law.name},
                        {"ctx", law.ctx.sorts},
                        {"premises", prem},
                        {"conclusion", {term_to_sexpr(law.conclusion.first),
                                        term_to_sexpr(law.conclusion.second)}}});
    }
    return {{"name", th.name}, {"sig", signature_to_json(th.sig)}, {"laws", laws}};
}

inline EquationalTheory theory_from_json(const Json& j) {
    EquationalTheory th;
    th.name = j.value("name", "");
    th.sig = signature_from_json(j.at("sig"));
    for (const Json& lj : j.at("laws")) {
        Entailment law;
        law.name = lj.value("name", "");
        law.ctx.sorts = lj.at("ctx").get<std::vector<std::string>>();
        for (const auto& s : law.ctx.sorts)
            if (!th.sig.has_sort(s)) throw Error(Errc::BadFile, "law context uses unknown sort " + s);
        auto read_pair = [&](const Json& pj) {
            if (!pj.is_array() || pj.size() != 2)
                throw Error(Errc::BadFile, "equation must be a [lhs, rhs] pair");
            Term l = validate_term(th.sig, law.ctx, term_from_sexpr(pj[0].get<std::string>()));
            Term r = validate_term(th.sig, law.ctx, term_from_sexpr(pj[1].get<std::string>()));
            if (l.sort != r.sort) throw Error(Errc::SortMismatch, "equation sides differ in sort");
            return std::pair<Term, Term>(std::move(l), std::move(r));
        };
        for (const Json& pj : lj.value("premises", Json::array())) law.premises.push_back(read_pair(pj));
        law.conclusion = read_pair(lj.at("conclusion"));
        th.laws.push_back(std::move(law));
    }
    return th;
}

// --- Finite models ----------------------------------------------------------
// {sig, carriers: {sort: [names]}, eq: {sort: [[class members]]},
//  ops: {sym: nested array}}; tables nest by argument position, entries are
// carrier positions or names. `eq` defaults to the discrete setoid.

namespace detail {

inline std::size_t element_index(const FiniteCarrier& c, const Json& j, const std::string& where) {
    if (j.is_number_unsigned() || j.is_number_integer()) {
        auto i = j.get<long long>();
        if (i < 0 || static_cast<std::size_t>(i) >= c.size())
            throw Error(Errc::BadFile, "element index " + std::to_string(i) + " out of range in " + where);
        return static_cast<std::size_t>(i);
    }
    if (j.is_string()) {
        const std::string name = j.get<std::string>();
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c.names[i] == name) return i;
        throw Error(Errc::BadFile, "unknown element `" + name + "` in " + where);
    }
    throw Error(Errc::BadFile, "element must be an index or a name in " + where);
}

inline void flatten_table(const Json& j, const std::vector<std::size_t>& dims, std::size_t pos,
                          const FiniteCarrier& result, std::vector<std::size_t>& out,
                          const std::string& where) {
    if (pos == dims.size()) {
        out.push_back(element_index(result, j, where));
        return;
    }
    if (!j.is_array() || j.size() != dims[pos])
        throw Error(Errc::BadFile, "table for " + where + " has wrong shape at depth " +
                                       std::to_string(pos));
    for (const Json& e : j) flatten_table(e, dims, pos + 1, result, out, where);
}

inline Json nest_table(const std::vector<std::size_t>& table, const std::vector<std::size_t>& dims,
                       std::size_t pos, std::size_t& cursor) {
    if (pos == dims.size()) return table[cursor++];
    Json arr = Json::array();
    for (std::size_t i = 0; i < dims[pos]; ++i) arr.push_back(nest_table(table, dims, pos + 1, cursor));
    return arr;
}

}  // namespace detail

inline Model model_from_json(const Json& j) {
    Model m;
    m.sig = signature_from_json(j.at("sig"));
    if (!j.contains("carriers")) throw Error(Errc::BadFile, "model needs `carriers`");
    for (const auto& sort : m.sig.sorts) {
        if (!j.at("carriers").contains(sort))
            throw Error(Errc::BadFile, "no carrier for sort " + sort);
        FiniteCarrier c = FiniteCarrier::discrete(
            j.at("carriers").at(sort).get<std::vector<std::string>>());
        if (j.contains("eq") && j.at("eq").contains(sort)) {
            for (const Json& cls : j.at("eq").at(sort)) {
                std::size_t first = UnionFind::npos;
                for (const Json& e : cls) {
                    std::size_t i = detail::element_index(c, e, "eq." + sort);
                    if (first == UnionFind::npos)
                        first = i;
                    else
                        c.classes.unite(first, i);
                }
            }
        }
        m.carriers[sort] = std::move(c);
    }
    if (!j.contains("ops")) throw Error(Errc::BadFile, "model needs `ops`");
    for (const auto& [sym, ty] : m.sig.ops) {
        if (!j.at("ops").contains(sym)) throw Error(Errc::BadFile, "no table for op " + sym);
        std::vector<std::size_t> dims = op_dims(m, ty);
        std::vector<std::size_t> table;
        detail::flatten_table(j.at("ops").at(sym), dims, 0, m.finite_carrier(ty.result), table, sym);
        set_table_op(m, sym, std::move(table));
    }
    return m;
}

inline Json model_to_json(const Model& m) {
    if (!m.finite()) throw Error(Errc::Unsupported, "only finite models serialize to JSON");
    Json carriers = Json::object(), eq = Json::object(), ops = Json::object();
    for (const auto& sort : m.sig.sorts) {
        const FiniteCarrier& c = m.finite_carrier(sort);
        carriers[sort] = c.names;
        Json classes = Json::array();
        std::map<std::size_t, std::vector<std::string>> by_root;
        for (std::size_t i = 0; i < c.size(); ++i) by_root[c.classes.find(i)].push_back(c.names[i]);
        for (const auto& [root, members] : by_root) classes.push_back(members);
        eq[sort] = classes;
    }
    for (const auto& [sym, ty] : m.sig.ops) {
        std::vector<std::size_t> dims = op_dims(m, ty);
        std::size_t cursor = 0;
        ops[sym] = detail::nest_table(m.ops.at(sym).table, dims, 0, cursor);
    }
    return {{"sig", signature_to_json(m.sig)}, {"carriers", carriers}, {"eq", eq}, {"ops", ops}};
}

// --- Homomorphism input & IsoReport output ----------------------------------
// input: {source: MODEL, target: MODEL, map: {sort: [target element per
// source element, as position or name]}}

struct HomoInput {
    Model source, target;
    std::map<std::string, std::vector<std::size_t>> map;
};

inline HomoInput homo_input_from_json(const Json& j) {
    HomoInput in;
    in.source = model_from_json(j.at("source"));
    in.target = model_from_json(j.at("target"));
    for (const auto& sort : in.source.sig.sorts) {
        if (!j.at("map").contains(sort)) throw Error(Errc::BadFile, "no map for sort " + sort);
        const FiniteCarrier& tgt = in.target.finite_carrier(sort);
        std::vector<std::size_t> f;
        for (const Json& e : j.at("map").at(sort))
            f.push_back(detail::element_index(tgt, e, "map." + sort));
        if (f.size() != in.source.carrier_size(sort))
            throw Error(Errc::BadFile, "map for sort " + sort + " has wrong length");
        in.map[sort] = std::move(f);
    }
    return in;
}

inline Json iso_report_to_json(const IsoReport& r) {
    Json j;
    j["verified"] = r.verified;
    j["failures"] = r.failures;
    j["quotient"] = model_to_json(r.quotient_model);
    j["image"] = model_to_json(r.image.sub.model);
    Json wit = Json::object();
    for (const auto& [sort, w] : r.image.witness) wit[sort] = w;
    j["image_witness"] = wit;
    return j;
}

}  // namespace alg
