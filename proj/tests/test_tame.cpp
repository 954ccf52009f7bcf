#include "support.hpp"

#include "nilmap/classification.hpp"
#include "nilmap/errors.hpp"
#include "nilmap/generators.hpp"
#include "nilmap/tame.hpp"

#include <doctest.h>

using namespace nilmap;
using testing_support::M;
using testing_support::P;

namespace {

PolyMap shifted(const PolyMap& h) { return PolyMap::identity(h.dimension()) + h; }

std::size_t count_linear(const TameFactorization& f) {
    return static_cast<std::size_t>(std::count_if(f.factors.begin(), f.factors.end(), [](const TameFactor& t) {
        return std::holds_alternative<LinearMap>(t);
    }));
}

}  // namespace

TEST_CASE("elementary maps") {
    ElementaryMap e(2, 0, P("y^2", 2));
    CHECK(e.realize() == M("x + y^2; y"));
    CHECK(compose_map(e.realize(), e.inverse().realize()) == PolyMap::identity(2));
    CHECK_THROWS_AS(ElementaryMap(2, 0, P("x*y", 2)), ShapeError);
    CHECK_THROWS_AS(ElementaryMap(2, 2, P("y", 2)), DimensionMismatch);
    CHECK_THROWS_AS(ElementaryMap(2, 0, P("y", 3)), DimensionMismatch);

    gen::Engine rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 3, i = trial % n;
        std::vector<std::size_t> others;
        for (std::size_t v = 0; v < n; ++v)
            if (v != i) others.push_back(v);
        ElementaryMap g(n, i, gen::random_polynomial(rng, n, others, 3, 4));
        CHECK(compose_map(g.realize(), g.inverse().realize()) == PolyMap::identity(n));
        CHECK(compose_map(g.inverse().realize(), g.realize()) == PolyMap::identity(n));
    }
}

TEST_CASE("keller condition") {
    CHECK(keller_check(M("x + y^2; y")));
    CHECK_FALSE(keller_check(M("x^2; y")));
    CHECK_FALSE(keller_check(M("0; y")));
    gen::Engine rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + trial % 4;
        CHECK(keller_check(shifted(gen::random_nilpotent_member(rng, n))));
    }
}

TEST_CASE("formal inverse") {
    CHECK(formal_inverse(M("x + y^2; y")) == M("x - y^2; y"));
    CHECK(formal_inverse(M("x + y^2; y + z^3; z")) == M("x - (y - z^3)^2; y - z^3; z"));
    CHECK_FALSE(formal_inverse(M("x + x^2; y")));
    CHECK_FALSE(formal_inverse(M("x + x^2; y"), 12));
    CHECK_THROWS_AS(formal_inverse(M("x + 1; y")), ShapeError);
    // The inverse has degree 4; a bound of 2 cannot hold it.
    CHECK_FALSE(formal_inverse(M("x + y^2; y + z^2; z"), 2));
    CHECK(formal_inverse(M("x + y^2; y + z^2; z"), 4));

    gen::Engine rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = trial % 4 == 0 ? 3 : 2 + trial % 3;
        const PolyMap f = shifted(trial % 4 == 0 ? gen::random_form_a_conjugate(rng).map
                                                  : gen::random_triangular_nilpotent(rng, n, 2));
        auto g = formal_inverse(f);
        REQUIRE(g);
        CHECK(compose_map(f, *g) == PolyMap::identity(n));
        CHECK(compose_map(*g, f) == PolyMap::identity(n));
    }
}

TEST_CASE("composition of factors") {
    CHECK(compose_factorization(TameFactorization{3, {}}) == PolyMap::identity(3));
    CHECK(compose_factorization(TameFactorization{2, {ElementaryMap(2, 0, P("y^2", 2))}}) == M("x + y^2; y"));
    // The last factor is applied first.
    TameFactorization f{2, {ElementaryMap(2, 0, P("y^2", 2)), ElementaryMap(2, 1, P("x", 2))}};
    CHECK(compose_factorization(f) == M("x + (y + x)^2; y + x"));
    TameFactorization bad{2, {ElementaryMap(3, 0, P("y^2", 3))}};
    CHECK_THROWS_AS(compose_factorization(bad), DimensionMismatch);
}

TEST_CASE("tame decomposition") {
    auto f = tame_decompose(M("x + y^2; y"));
    REQUIRE(f.factors.size() == 1);
    CHECK(std::get<ElementaryMap>(f.factors[0]) == ElementaryMap(2, 0, P("y^2", 2)));

    CHECK_THROWS_AS(tame_decompose(M("x + y^2; y + x^2")), NotTriangularizable);
    CHECK_THROWS_AS(tame_decompose(M("x + x^2; y")), NotTriangularizable);

    const PolyMap chain = M("x + y^2 + z; y + z^3; z");
    CHECK(compose_factorization(tame_decompose(chain)) == chain);

    // Canonical form A with constant a and the map moved to triangular coordinates.
    const PolyMap h = build_canonical_A(CanonicalFormA{P("1", 1), P("1", 1), P("0", 1), P("0", 1),
                                                       parse_polynomial("t^2", VarNames::from_alias("tz", 2))});
    const PolyMap fa = shifted(h);
    CHECK_THROWS_AS(tame_decompose(fa), NotTriangularizable);
    const auto t = linear_triangularization(h);
    REQUIRE(t);
    const auto dec = tame_decompose(fa, *t);
    CHECK(count_linear(dec) == 2);
    CHECK(dec.factors.size() <= 4);
    CHECK(compose_factorization(dec) == fa);
}

TEST_CASE("linear triangularization") {
    CHECK(linear_triangularization(PolyMap::zero(3)));
    CHECK_FALSE(linear_triangularization(M("y^2; x^2")));
    CHECK_FALSE(linear_triangularization(M("(z*x+y)^2; -z*(z*x+y)^2; 0")));

    gen::Engine rng(2);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const PolyMap h = gen::random_triangular_nilpotent(rng, n, 3);
        auto t = linear_triangularization(h);
        REQUIRE(t);
        CHECK(compose_factorization(tame_decompose(shifted(h), *t)) == shifted(h));
    }
}

TEST_CASE("classified decomposition of the generated families") {
    gen::Engine rng(77);
    CHECK(classify_and_decompose(M("x + y^2; y")).route == "triangular");
    CHECK_THROWS_AS(classify_and_decompose(M("x + y^2; y + x^2")), NotTriangularizable);
    CHECK_THROWS_AS(classify_and_decompose(M("x + 1; y")), ShapeError);

    // (x1 + x3, x2, x3) o (x1, x2 + x1^3, x3) o (x1, x2, x3 + x1^2): H has trace 2 x1, so no
    // linear conjugation makes it triangular.
    const PolyMap block = M("x + z + x^2; y + x^3; z + x^2");
    CHECK_FALSE(linear_triangularization(block - PolyMap::identity(3)));
    const auto b = classify_and_decompose(block);
    CHECK(b.route == "block");
    CHECK(compose_factorization(b.factorization) == block);

    for (int trial = 0; trial < 10; ++trial) {
        const PolyMap f = shifted(gen::random_form_a_conjugate(rng).map);
        const auto d = classify_and_decompose(f);
        CHECK(compose_factorization(d.factorization) == f);
    }
    for (std::size_t n : {4, 5}) {
        for (int trial = 0; trial < 6; ++trial) {
            const PolyMap f = shifted(gen::random_form_b(rng, n, true).map);
            const auto d = classify_and_decompose(f);
            CHECK(compose_factorization(d.factorization) == f);
        }
        const PolyMap f = shifted(gen::reduction_instance(rng, n, Rational(-3)).map);
        const auto d = classify_and_decompose(f);
        CHECK(d.route == "reduction");
        CHECK(compose_factorization(d.factorization) == f);
    }
}
