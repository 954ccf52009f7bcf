#include "support.hpp"

#include "nilmap/errors.hpp"
#include "nilmap/kernels.hpp"
#include "nilmap/linalg.hpp"

#include <doctest.h>

using namespace nilmap;
using testing_support::P;
using testing_support::random_poly;

namespace {

RationalMatrix R(std::vector<std::vector<long>> rows) {
    std::vector<RationalVector> rv;
    for (auto& r : rows) {
        RationalVector v;
        for (long x : r) v.emplace_back(x);
        rv.push_back(v);
    }
    return RationalMatrix::from_rows(rv);
}

PolyMatrix random_matrix(std::mt19937_64& rng, std::size_t n, std::size_t nvars, unsigned deg) {
    PolyMatrix m(n, n, nvars);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = random_poly(rng, nvars, deg, 2);
    return m;
}

}  // namespace

TEST_CASE("elementary maps") {
    auto swap = elementary_permutation(2, 0, 1);
    auto v = swap.matrix().apply(RationalVector{Rational(3), Rational(5)});
    CHECK(v == RationalVector{Rational(5), Rational(3)});
    auto p34 = elementary_permutation(4, 2, 3);
    CHECK((p34 * p34).is_identity());
    CHECK(elementary_row_add(4, 0, Rational(0), 1).is_identity());
    auto add = elementary_row_add(4, 2, Rational(5, 3), 3);
    CHECK((add * elementary_row_add(4, 2, Rational(-5, 3), 3)).is_identity());
    CHECK(add.matrix()(3, 2) == Rational(5, 3));
    CHECK(add.matrix() * add.inverse_matrix() == RationalMatrix::identity(4));
    CHECK_THROWS_AS(elementary_permutation(3, 1, 1), std::out_of_range);
    CHECK_THROWS_AS(elementary_row_add(3, 0, Rational(1), 3), std::out_of_range);
    CHECK_THROWS_AS(LinearMap(R({{1, 2}, {2, 4}})), PreconditionError);
}

TEST_CASE("rational kernel") {
    auto k = kernel(R({{1, 1}, {-1, -1}}));
    REQUIRE(k.size() == 1);
    CHECK(k[0] == RationalVector{Rational(-1), Rational(1)});
    CHECK(kernel(RationalMatrix::identity(3)).empty());
    CHECK(kernel(RationalMatrix(2, 2)).size() == 2);
    auto m = R({{1, 2, 3, 4}, {2, 4, 7, 9}, {0, 0, 1, 1}});
    for (const auto& vec : kernel(m)) CHECK(m.apply(vec) == RationalVector(3, Rational(0)));
    CHECK(m.rank() == 2);
    CHECK(R({{2, 1}, {1, 1}}).determinant() == Rational(1));
}

TEST_CASE("polynomial determinants") {
    PolyMatrix n2(2, 2, std::vector<Polynomial>{P("0", 2), P("1", 2), P("0", 2), P("0", 2)});
    CHECK(poly_det(n2).is_zero());
    PolyMatrix j(2, 2, std::vector<Polynomial>{P("1", 2), P("2*y", 2), P("0", 2), P("1", 2)});
    CHECK(poly_det(j) == P("1", 2));
    PolyMatrix sq(2, 2, std::vector<Polynomial>{P("2*x", 2), P("0", 2), P("0", 2), P("1", 2)});
    CHECK(poly_det(sq) == P("2*x", 2));
    CHECK_THROWS_AS(poly_det(PolyMatrix(2, 3, 2)), DimensionMismatch);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + trial % 5;
        auto a = random_matrix(rng, n, 2, 2);
        CHECK(poly_det_bareiss(a) == poly_det_cofactor(a));
        if (n <= 3) {
            auto b = random_matrix(rng, n, 2, 2);
            CHECK(poly_det(a * b) == poly_det(a) * poly_det(b));
        }
    }
}

TEST_CASE("principal minor sums") {
    PolyMatrix a(2, 2, std::vector<Polynomial>{P("1", 2), P("0", 2), P("0", 2), P("-1", 2)});
    CHECK(principal_minor_sum(a, 1).is_zero());
    CHECK(principal_minor_sum(a, 2) == P("-1", 2));
    CHECK_THROWS(principal_minor_sum(a, 0));
    CHECK_THROWS(principal_minor_sum(a, 3));
}

TEST_CASE("serial and parallel kernels agree") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 5;
        auto a = random_matrix(rng, n, 3, 2), b = random_matrix(rng, n, 3, 2);
        CHECK(kernels::multiply_serial(a, b) == kernels::multiply_parallel(a, b));
        for (std::size_t k = 1; k <= n; ++k)
            CHECK(kernels::principal_minor_sum_serial(a, k) == kernels::principal_minor_sum_parallel(a, k));
    }
    int hits = 0;
    std::vector<int> seen(50, 0);
    kernels::parallel_for(50, [&](std::size_t i) { seen[i] = 1; });
    for (int s : seen) hits += s;
    CHECK(hits == 50);
    CHECK_THROWS_AS(kernels::parallel_for(8, [](std::size_t i) {
                        if (i == 3) throw std::runtime_error("boom");
                    }),
                    std::runtime_error);
}

TEST_CASE("symbolic rank") {
    PolyMatrix j(2, 2, std::vector<Polynomial>{P("0", 2), P("1", 2), P("0", 2), P("0", 2)});
    CHECK(poly_matrix_rank(j) == 1);
    CHECK(poly_matrix_rank(PolyMatrix(3, 3, 3)) == 0);
    CHECK(poly_matrix_rank(PolyMatrix::identity(3, 3)) == 3);
    PolyMatrix dep(2, 3, std::vector<Polynomial>{P("x"), P("y"), P("z"), P("x*z"), P("y*z"), P("z^2")});
    CHECK(poly_matrix_rank(dep) == 1);
}
