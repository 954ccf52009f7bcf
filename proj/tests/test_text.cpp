#include "support.hpp"

#include "nilmap/errors.hpp"

#include <doctest.h>

using namespace nilmap;
using testing_support::random_poly;

TEST_CASE("parse then format") {
    CHECK(format_map(parse_map("y; 0")) == "y; 0");
    CHECK(format_polynomial(parse_polynomial("(z*x + y)^2 - 3/2*z", 3)) == "x^2*z^2 + 2*x*y*z + y^2 - 3/2*z");
    CHECK(format_polynomial(parse_polynomial("-x", 2)) == "-x");
    CHECK(format_polynomial(parse_polynomial("x1^2 - 2*x5", 5)) == "x1^2 - 2*x5");
    CHECK(parse_map("(z*x+y)^2; -z*(z*x+y)^2; 0").dimension() == 3);
}

TEST_CASE("operator precedence") {
    CHECK(parse_polynomial("2*x^2", 1) == parse_polynomial("2*(x^2)", 1));
    CHECK(parse_polynomial("x - y - x", 2) == parse_polynomial("-y", 2));
    CHECK(parse_polynomial("-x^2", 1) == parse_polynomial("-(x^2)", 1));
}

TEST_CASE("syntax errors carry a position") {
    CHECK_THROWS_AS(parse_map("x +"), ParseError);
    CHECK_THROWS_AS(parse_map("x y; 0"), ParseError);
    CHECK_THROWS_AS(parse_map("q; 0"), ParseError);
    CHECK_THROWS_AS(parse_map("x; y", 3), std::invalid_argument);
    try {
        parse_map("x;\n y + * 2");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() >= 4);
    }
}

TEST_CASE("json documents") {
    auto m = parse_map(R"({"n": 2, "components": ["y", "0"]})");
    CHECK(m == parse_map("y; 0"));
    CHECK_THROWS(parse_map(R"({"n": 3, "components": ["y", "0"]})"));
}

TEST_CASE("aliases") {
    auto names = VarNames::from_alias("abc", 3);
    auto p = parse_polynomial("a*b - c", names);
    CHECK(p == parse_polynomial("x*y - z", 3));
    CHECK(format_polynomial(p, names) == "a*b - c");
}

TEST_CASE("format round trip is stable") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 5;
        auto p = random_poly(rng, n, 4, 5);
        const auto once = format_polynomial(p);
        CHECK(parse_polynomial(once, n) == p);
        CHECK(format_polynomial(parse_polynomial(once, n)) == once);
    }
}
