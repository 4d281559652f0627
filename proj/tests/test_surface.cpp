#include "doctest.h"

#include <map>
#include <string>
#include <vector>

#include "alg/surface.hpp"

using namespace alg;

namespace {

Term lower(const std::string& text, const std::string& theory = "semiring") {
    std::map<std::string, int> vars;
    std::vector<std::string> names;
    return surface_to_term(parse_surface(text), theory, vars, names);
}

}  // namespace

TEST_CASE("multiplication binds tighter than addition") {
    CHECK(lower("x * y + 1").same(Term::app(
        "plus", {Term::app("mult", {Term::v(0), Term::v(1)}), Term::app("one")})));
    CHECK(lower("x * (y + 1)").same(Term::app(
        "mult", {Term::v(0), Term::app("plus", {Term::v(1), Term::app("one")})})));
}

TEST_CASE("operators associate to the left") {
    CHECK(lower("a + b + c").same(Term::app(
        "plus", {Term::app("plus", {Term::v(0), Term::v(1)}), Term::v(2)})));
    CHECK(lower("a * b * c").same(Term::app(
        "mult", {Term::app("mult", {Term::v(0), Term::v(1)}), Term::v(2)})));
}

TEST_CASE("identifiers, constants, and variable numbering") {
    std::map<std::string, int> vars;
    std::vector<std::string> names;
    Term t = surface_to_term(parse_surface("y + x + y"), "semiring", vars, names);
    // numbering is by first appearance
    CHECK(names == std::vector<std::string>{"y", "x"});
    CHECK(t.same(Term::app("plus", {Term::app("plus", {Term::v(0), Term::v(1)}), Term::v(0)})));

    CHECK(lower("0").same(Term::app("zero")));
    CHECK(lower("1").same(Term::app("one")));
    CHECK(lower("long_name2").same(Term::v(0)));
}

TEST_CASE("monoid lowering uses op/unit and rejects the additive fragment") {
    CHECK(lower("x * 1", "monoid").same(Term::app("op", {Term::v(0), Term::app("unit")})));
    CHECK_THROWS_AS(lower("x + y", "monoid"), Error);
    CHECK_THROWS_AS(lower("0", "comm_monoid"), Error);
}

TEST_CASE("syntax errors carry line and column") {
    try {
        parse_surface("x + * y");
        FAIL("expected SyntaxError");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::SyntaxError);
        CHECK(std::string(e.what()).find("1:5") != std::string::npos);
        CHECK(std::string(e.what()).find("`*`") != std::string::npos);
    }

    try {
        parse_surface("x +\n  + y");
        FAIL("expected SyntaxError");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("2:3") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_surface("(x + y"), Error);
    CHECK_THROWS_AS(parse_surface("x y"), Error);
    CHECK_THROWS_AS(parse_surface(""), Error);
}

TEST_CASE("printing is canonical and parse/print round-trips") {
    for (const std::string& text :
         {"x*y + 1", "x*(y + 1)", "(a + b)*(a + b)", "a + b*c + 0", "1", "x"}) {
        std::string printed = surface_to_string(parse_surface(text));
        CHECK(printed == text);
        CHECK(surface_to_string(parse_surface(printed)) == printed);
    }
    // normalization of spacing and redundant parentheses
    CHECK(surface_to_string(parse_surface(" x *y+1 ")) == "x*y + 1");
    CHECK(surface_to_string(parse_surface("((x))+((y*z))")) == "x + y*z");
}

TEST_CASE("surface_to_host lowers the monoid fragment") {
    HostExpr h = surface_to_host(parse_surface("x*(y*1)"));
    CHECK(host_to_string(h) == "x*(y*1)");
    CHECK_THROWS_AS(surface_to_host(parse_surface("x + y")), Error);
    CHECK_THROWS_AS(surface_to_host(parse_surface("0")), Error);
}
