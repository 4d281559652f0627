#include "doctest.h"

#include <sstream>
#include <string>
#include <vector>

#include "alg/cli.hpp"

using namespace alg;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(TEST_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("decide: distributivity holds in the free semiring") {
    RunResult r = run_cli({"decide", "--theory", "semiring", "x*(y + 1) = x*y + x"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out == "lhs: x + xy\nrhs: x + xy\nequal\n");
}

TEST_CASE("decide: an unequal pair reports both normal forms") {
    RunResult r = run_cli({"decide", "--theory", "semiring", "x + x = x*x"});
    CHECK(r.code == cli::kNegative);
    CHECK(r.out == "lhs: 2·x\nrhs: x²\nunequal\n");
}

TEST_CASE("decide: monoid commutativity is rejected, bag version holds") {
    CHECK(run_cli({"decide", "--theory", "monoid", "x*y = y*x"}).code == cli::kNegative);
    RunResult r = run_cli({"decide", "--theory", "comm_monoid", "x*y = y*x"});
    CHECK(r.code == cli::kOk);
}

TEST_CASE("quote: the pinned expression") {
    RunResult r = run_cli({"quote", "(x*y)*(x*1)"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out ==
          "heap: (merge novars (merge (merge (singlevar x) (singlevar y)) (merge novars novars)))\n"
          "expr: (mult (mult (var (right (left (left unit)))) (var (right (left (right unit))))) "
          "(mult (var (right (left (left unit)))) one))\n");
}

TEST_CASE("quote: --equality shares the heap and decides") {
    RunResult r = run_cli({"quote", "x*1", "--equality", "x"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("heap: ") == 0);
    CHECK(r.out.find("\nlhs: ") != std::string::npos);
    CHECK(r.out.find("\nrhs: ") != std::string::npos);
    CHECK(r.out.find("\nequal\n") != std::string::npos);

    CHECK(run_cli({"quote", "x*y", "--equality", "y*x"}).code == cli::kNegative);
}

TEST_CASE("quote: --trace prints resolution steps before the result") {
    RunResult r = run_cli({"quote", "x", "--trace"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("[try] 0 Quote") == 0);
    CHECK(r.out.find("heap: ") != std::string::npos);
}

TEST_CASE("convert: peano to binary") {
    RunResult r = run_cli({"convert", "--from", "peano", "--to", "binary", "6"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out == "110\n");

    CHECK(run_cli({"convert", "--from", "binary", "--to", "peano", "110"}).out == "6\n");
    CHECK(run_cli({"convert", "--from", "peano", "--to", "closedterm", "0"}).out == "zero\n");
}

TEST_CASE("check: a finite ring passes exhaustively") {
    RunResult r = run_cli({"check", "--theory", "ring", "--model", data("z6_ring.json")});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("propriety: pass\n") == 0);
    CHECK(r.out.find("plus_comm: pass (exhaustive)\n") != std::string::npos);
    CHECK(r.out.find("fail") == std::string::npos);
}

TEST_CASE("check: a corrupted table fails with a counterexample") {
    RunResult r = run_cli({"check", "--theory", "monoid", "--model", data("z4_monoid_corrupt.json")});
    CHECK(r.code == cli::kNegative);
    CHECK(r.out.find("assoc: fail") != std::string::npos);
    CHECK(r.out.find("counterexample") != std::string::npos);
}

TEST_CASE("check: registered sampled implementations work as models") {
    RunResult r = run_cli({"check", "--theory", "semiring", "--model", "binary",
                           "--samples", "50", "--seed", "7"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("plus_comm: pass (sampled 50)") != std::string::npos);
}

TEST_CASE("homo: the pinned quotient Z/4 -> Z/2") {
    RunResult r = run_cli({"homo", "--input", data("homo_z4_z2.json")});
    CHECK(r.code == cli::kOk);
    Json j = Json::parse(r.out);
    CHECK(j["verified"] == true);
    CHECK(j["quotient"]["eq"]["num"].size() == 2);      // two congruence classes
    CHECK(j["image"]["carriers"]["num"].size() == 2);  // isomorphic image in Z/2
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli({}).code == cli::kUsage);
    CHECK(run_cli({"frobnicate"}).code == cli::kUsage);
    CHECK(run_cli({"decide", "x = x"}).code == cli::kUsage);  // missing --theory
    RunResult r = run_cli({"check", "--theory", "group", "--model", "binary"});
    CHECK(r.code == cli::kUsage);
    CHECK_FALSE(r.err.empty());
    CHECK(run_cli({"convert", "--from", "roman", "--to", "peano", "4"}).code == cli::kUsage);
}

TEST_CASE("file and syntax errors exit with 3") {
    CHECK(run_cli({"check", "--theory", "ring", "--model", data("no_such_file.json")}).code ==
          cli::kBadInput);
    RunResult r = run_cli({"decide", "--theory", "semiring", "x + = y"});
    CHECK(r.code == cli::kBadInput);
    CHECK_FALSE(r.err.empty());
    CHECK(run_cli({"decide", "--theory", "semiring", "x + y"}).code == cli::kBadInput);
    CHECK(run_cli({"quote", "x + y"}).code == cli::kBadInput);  // additive fragment
}

TEST_CASE("--help prints usage and exits 0") {
    RunResult r = run_cli({"--help"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("check") != std::string::npos);
    CHECK(r.out.find("quote") != std::string::npos);
}

TEST_CASE("output is byte-stable across runs") {
    std::vector<std::vector<std::string>> cases = {
        {"decide", "--theory", "semiring", "(x + y)*(x + y) = x*x + x*y + x*y + y*y"},
        {"quote", "(x*y)*(x*1)"},
        {"convert", "--from", "peano", "--to", "binary", "25"},
        {"check", "--theory", "ring", "--model", data("z6_ring.json")},
        {"homo", "--input", data("homo_z4_z2.json")},
    };
    for (const auto& args : cases) {
        RunResult a = run_cli(args), b = run_cli(args);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
}
