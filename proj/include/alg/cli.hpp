#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "alg/json_io.hpp"
#include "alg/normal_form.hpp"
#include "alg/numbers.hpp"
#include "alg/quote.hpp"
#include "alg/surface.hpp"
#include "alg/theory.hpp"

namespace alg {

// Exit codes: 0 ok / positive verdict, 1 negative verdict, 2 usage error,
// 3 file or parse error.
namespace cli {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kBadInput = 3;

namespace detail {

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::BadFile, "cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw Error(Errc::BadFile, path + ": " + e.what());
    }
    return j;
}

// `--model` accepts a registered sampled implementation name or a JSON file.
inline Model load_model(const std::string& spec) {
    const NumericRegistry& reg = NumericRegistry::instance();
    for (const std::string& name : reg.naturals_names())
        if (spec == name) return reg.naturals(name).model;
    if (spec == "intpair") return intpair_model();
    return model_from_json(load_json_file(spec));
}

inline EquationalTheory load_theory(const std::string& spec) {
    try {
        return builtin_theory(spec);
    } catch (const Error& e) {
        if (e.code() != Errc::UnknownTheory) throw;
        // not a builtin name: only fall through to a file that actually exists
        if (!std::ifstream(spec).good()) throw;
    }
    return theory_from_json(load_json_file(spec));
}

inline void print_report(std::ostream& out, const VarietyReport& r) {
    out << "propriety: " << (r.algebra.ok ? "pass" : "fail " + r.algebra.witness) << "\n";
    for (const LawResult& lr : r.laws) {
        out << lr.law << ": " << (lr.pass ? "pass" : "fail") << " (" << lr.strategy << ")";
        if (!lr.pass) out << " counterexample " << lr.counterexample;
        out << "\n";
    }
}

inline std::pair<std::string, std::string> split_equation(const std::string& eq) {
    std::size_t p = eq.find('=');
    if (p == std::string::npos || eq.find('=', p + 1) != std::string::npos)
        throw Error(Errc::SyntaxError, "expected exactly one `=` in the equation");
    return {eq.substr(0, p), eq.substr(p + 1)};
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"algkernel: equational reasoning over multisorted algebras"};
    app.require_subcommand(1);

    std::string theory, model_spec, equation, expr_text, equality_text, input_path;
    std::string conv_from, conv_to, conv_value;
    std::size_t samples = kDefaultSamples;
    std::uint64_t seed = kDefaultSeed;
    bool trace = false;

    CLI::App* check = app.add_subcommand("check", "check a model against a theory's laws");
    check->add_option("--theory", theory, "builtin theory name or theory JSON file")->required();
    check->add_option("--model", model_spec, "model JSON file or registered implementation")
        ->required();
    check->add_option("--samples", samples, "samples per law for non-finite models");
    check->add_option("--seed", seed, "sampling seed");

    CLI::App* decide = app.add_subcommand("decide", "decide an equation in the free model");
    decide->add_option("--theory", theory, "builtin theory name")->required();
    decide->add_option("equation", equation, "\"LHS = RHS\" in surface syntax")->required();

    CLI::App* quote = app.add_subcommand("quote", "reify a monoid expression");
    quote->add_option("expr", expr_text, "expression in surface syntax")->required();
    quote->add_option("--equality", equality_text, "second expression, quoted into a shared heap");
    quote->add_flag("--trace", trace, "print the resolution trace");

    CLI::App* homo = app.add_subcommand("homo", "run the first homomorphism theorem");
    homo->add_option("--input", input_path, "JSON file with source, target, and map")->required();

    CLI::App* convert = app.add_subcommand("convert", "convert between numeral representations");
    convert->add_option("--from", conv_from, "source representation")->required();
    convert->add_option("--to", conv_to, "target representation")->required();
    convert->add_option("value", conv_value, "numeral in the source representation")->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return kOk;
        }
        err << e.what() << "\n";
        return kUsage;
    }

    try {
        if (check->parsed()) {
            EquationalTheory th = detail::load_theory(theory);
            Model m = detail::load_model(model_spec);
            Strategy st;
            if (!m.finite()) st = Strategy::sampled(samples, seed);
            VarietyReport report = check_in_variety(m, th, st);
            detail::print_report(out, report);
            return report.all_pass() ? kOk : kNegative;
        }

        if (decide->parsed()) {
            builtin_theory(theory);  // reject unknown theory names as usage errors
            auto [ls, rs] = detail::split_equation(equation);
            std::map<std::string, int> vars;
            std::vector<std::string> names;
            Term lt = surface_to_term(parse_surface(ls), theory, vars, names);
            Term rt = surface_to_term(parse_surface(rs), theory, vars, names);
            VarContext ctx;
            ctx.sorts.assign(vars.size(), "num");
            NormalForm ln = normalize(theory, ctx, lt), rn = normalize(theory, ctx, rt);
            out << "lhs: " << normal_form_to_string(ln) << "\n";
            out << "rhs: " << normal_form_to_string(rn) << "\n";
            bool equal = (ln == rn);
            out << (equal ? "equal" : "unequal") << "\n";
            return equal ? kOk : kNegative;
        }

        if (quote->parsed()) {
            std::vector<std::string> trace_lines;
            std::vector<std::string>* tp = trace ? &trace_lines : nullptr;
            HostExpr lhs = surface_to_host(parse_surface(expr_text));
            if (equality_text.empty()) {
                QuoteResult r = quote_expr(novars(), lhs, {}, tp);
                for (const std::string& l : trace_lines) out << l << "\n";
                out << "heap: " << heap_to_string(r.env) << "\n";
                out << "expr: " << qexpr_to_string(r.expr) << "\n";
                return kOk;
            }
            HostExpr rhs = surface_to_host(parse_surface(equality_text));
            QuoteEqualityResult q = quote_equality_expr(lhs, rhs);
            for (const std::string& l : trace_lines) out << l << "\n";
            out << "heap: " << heap_to_string(q.env) << "\n";
            out << "lhs: " << qexpr_to_string(q.lhs) << "\n";
            out << "rhs: " << qexpr_to_string(q.rhs) << "\n";
            bool equal = quote_equality(lhs, rhs);
            out << (equal ? "equal" : "unequal") << "\n";
            return equal ? kOk : kNegative;
        }

        if (homo->parsed()) {
            HomoInput in = homo_input_from_json(detail::load_json_file(input_path));
            SortFn f;
            for (const auto& [sort, table] : in.map)
                f[sort] = [table](const Value& v) { return val(table[idx(v)]); };
            IsoReport report;
            try {
                Homomorphism h = check_homomorphism(in.source, in.target, f);
                report = first_homomorphism(h);
            } catch (const Error& e) {
                if (e.code() != Errc::NotAHomomorphism) throw;
                err << e.what() << "\n";
                return kNegative;
            }
            out << iso_report_to_json(report).dump(2) << "\n";
            return report.verified ? kOk : kNegative;
        }

        if (convert->parsed()) {
            const NumericRegistry& reg = NumericRegistry::instance();
            const NaturalsImpl& from = reg.naturals(conv_from);
            const NaturalsImpl& to = reg.naturals(conv_to);
            Value v = from.parse(conv_value);
            out << to.show(convert_naturals(from, to, v)) << "\n";
            return kOk;
        }
    } catch (const Error& e) {
        err << e.what() << "\n";
        if (e.code() == Errc::UnknownTheory || e.code() == Errc::UnknownImplementation)
            return kUsage;
        return kBadInput;
    }
    return kUsage;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, out, err);
}

}  // namespace cli
}  // namespace alg
