#include "support.hpp"

#include "nilmap/errors.hpp"

#include <doctest.h>

using namespace nilmap;
using testing_support::P;
using testing_support::random_poly;

TEST_CASE("rational canonical form") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, -2).to_string() == "-1/2");
    CHECK(Rational(0, 5).to_string() == "0");
    CHECK(Rational::parse("-6/4") == Rational(-3, 2));
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("add and multiply") {
    CHECK(P("x+1") + P("-x") == P("1"));
    CHECK(P("x^2*y + 1/2*y") + P("1/2*y") == P("x^2*y + y"));
    CHECK(P("x+y") * P("x-y") == P("x^2-y^2"));
    CHECK(P("z") * P("z*x+y") == P("z^2*x + z*y"));
    CHECK(P("x") + Polynomial(3) == P("x"));
    CHECK_THROWS_AS(P("x", 2) + P("x", 3), DimensionMismatch);
    CHECK_THROWS_AS(P("x", 2) * P("x", 3), DimensionMismatch);
}

TEST_CASE("partial derivatives and degrees") {
    CHECK(P("x^2*y").derivative(0) == P("2*x*y"));
    CHECK(P("x^3").derivative(1).is_zero());
    CHECK(P("(z*x+y)^2").derivative(2) == P("2*x*(z*x+y)"));
    CHECK_THROWS(P("x").derivative(5));
    CHECK(P("x^2*z + y").degree_in(0) == 2);
    CHECK(P("y").degree_in(0) == 0);
    CHECK(Polynomial(3).degree_in(0) == -1);
    CHECK(Polynomial(3).total_degree() == -1);
}

TEST_CASE("coefficients_in and homogeneous_parts") {
    auto cs = P("y*z^2 + x*z + 3").coefficients_in(2);
    REQUIRE(cs.size() == 3);
    CHECK(cs[0] == P("3"));
    CHECK(cs[1] == P("x"));
    CHECK(cs[2] == P("y"));
    CHECK(P("x^2").coefficients_in(2) == std::vector<Polynomial>{P("x^2")});
    CHECK(Polynomial(3).coefficients_in(2).empty());

    const std::size_t subset[] = {2, 3};
    auto parts = P("x3*x4 + x1*x3 + x2", 4).homogeneous_parts(subset);
    REQUIRE(parts.size() == 3);
    CHECK(parts[0] == P("x2", 4));
    CHECK(parts[1] == P("x1*x3", 4));
    CHECK(parts[2] == P("x3*x4", 4));
    auto lin = P("2*x3 - x4 + x1^2*x2", 4).homogeneous_parts(subset);
    CHECK(lin.size() == 2);
}

TEST_CASE("substitution and composition") {
    const std::size_t n = 2;
    std::map<std::size_t, Polynomial> b{{0, P("y+1", n)}};
    CHECK(P("x^2", n).substitute(b) == P("y^2+2*y+1", n));
    std::map<std::size_t, Polynomial> id{{0, P("x", n)}, {1, P("y", n)}};
    CHECK(P("x*y+3", n).substitute(id) == P("x*y+3", n));
    std::map<std::size_t, Polynomial> shear{{0, P("x+y", n)}, {1, P("y", n)}};
    CHECK(P("x*y", n).substitute(shear) == P("x*y+y^2", n));

    auto f = parse_map("x+y^2; y");
    CHECK(compose_map(f, parse_map("x-y^2; y")) == PolyMap::identity(2));
    CHECK(compose_map(f, PolyMap::identity(2)) == f);
    CHECK(compose_map(f, parse_map("x; y+1")) == parse_map("x+(y+1)^2; y+1"));
    CHECK_THROWS_AS(compose_map(f, PolyMap::identity(3)), DimensionMismatch);
}

TEST_CASE("exact division") {
    auto q = P("x^2 - y^2").divide_exact(P("x+y"));
    REQUIRE(q);
    CHECK(*q == P("x-y"));
    CHECK_FALSE(P("x^2 + y").divide_exact(P("x")).has_value());
}

TEST_CASE("ring axioms and identities on random polynomials") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 4;
        auto a = random_poly(rng, n, 3), b = random_poly(rng, n, 3), c = random_poly(rng, n, 3);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
        for (std::size_t i = 0; i < n; ++i) {
            Polynomial rebuilt(n);
            const auto cs = a.coefficients_in(i);
            for (std::size_t j = 0; j < cs.size(); ++j)
                rebuilt += cs[j] * Polynomial::variable(n, i).pow(static_cast<unsigned>(j));
            CHECK(rebuilt == a);
            for (std::size_t k = 0; k < n; ++k) CHECK(a.derivative(i).derivative(k) == a.derivative(k).derivative(i));
            if (!a.is_zero() && !b.is_zero()) CHECK((a * b).degree_in(i) == a.degree_in(i) + b.degree_in(i));
        }
        std::vector<std::size_t> subset{0};
        if (n > 2) subset.push_back(2);
        Polynomial sum(n);
        for (const auto& part : a.homogeneous_parts(subset)) sum += part;
        CHECK(sum == a);
        CHECK(Polynomial::multiply_truncated(a, b, 2) == (a * b).truncated(2));
    }
}
