#include "support.hpp"

#include "nilmap/classification.hpp"
#include "nilmap/errors.hpp"
#include "nilmap/generators.hpp"
#include "nilmap/univariate.hpp"

#include <doctest.h>

using namespace nilmap;
using testing_support::M;
using testing_support::P;

namespace {

Polynomial Z(const std::string& text) { return parse_polynomial(text, VarNames::from_alias("z", 1)); }
Polynomial TZ(const std::string& text) { return parse_polynomial(text, VarNames::from_alias("tz", 2)); }
Polynomial XY(const std::string& text) { return parse_polynomial(text, 2); }

CanonicalFormA params(const std::string& a1, const std::string& a2, const std::string& h, const std::string& c1 = "0",
                      const std::string& c2 = "0") {
    return CanonicalFormA{Z(a1), Z(a2), Z(c1), Z(c2), TZ(h)};
}

}  // namespace

TEST_CASE("canonical form A construction") {
    auto h1 = build_canonical_A(params("1", "1", "t^2"));
    CHECK(h1 == M("(x+y)^2; -(x+y)^2; 0"));
    auto j = jacobian(h1);
    CHECK((j * j).is_zero());

    auto h2 = build_canonical_A(params("z", "1", "t^2"));
    CHECK(h2 == M("(z*x+y)^2; -z*(z*x+y)^2; 0"));
    CHECK(is_nilpotent_bruteforce(h2));

    auto h3 = build_canonical_A(params("1", "1", "0", "z^2", "3*z"));
    CHECK(h3 == M("z^2; 3*z; 0"));
    CHECK_THROWS_AS(build_canonical_A(params("1", "1", "t^2", "1")), PreconditionError);
    CHECK_THROWS_AS(build_canonical_A(CanonicalFormA{XY("x"), Z("1"), Z("0"), Z("0"), TZ("t")}), DimensionMismatch);
}

TEST_CASE("canonical form A recognition") {
    auto r = recognize_canonical_A(M("z^2; x*z; 0"));
    REQUIRE(r);
    CHECK(r->transform.is_identity());
    CHECK(build_canonical_A(r->params) == M("z^2; x*z; 0"));
    CHECK(r->params.h.depends_on(1));

    CHECK_FALSE(recognize_canonical_A(M("y; 0; 0")));
    CHECK_FALSE(recognize_canonical_A(M("(z*x+y)^2; -z*(z*x+y)^2; 0")));  // deg_z v = 3
    CHECK_FALSE(recognize_canonical_A(M("x^2*z^2; x*z; 0")));              // not nilpotent

    gen::Engine rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        auto draw = gen::random_form_a_conjugate(rng);
        auto rec = recognize_canonical_A(draw.map);
        REQUIRE(rec);
        CHECK(conjugate(build_canonical_A(rec->params), rec->transform.inverse()) == draw.map);
        const Polynomial& a1 = rec->params.a1;
        const Polynomial& a2 = rec->params.a2;
        CHECK(univariate::gcd(a1, a2) == Polynomial::constant(1, Rational(1)));
    }
}

TEST_CASE("top coefficient triangularization") {
    auto id = triangularize_top_coefficients(M("y*z; x^2; x"));
    CHECK(id.transform.is_identity());

    auto tr = triangularize_top_coefficients(M("(x+y)*z; -(x+y)*z + y; x^2"));
    auto top_z = [](const Polynomial& p) {
        auto cs = p.coefficients_in(2);
        return cs.size() > 1 ? cs[1] : Polynomial(3);
    };
    const Polynomial ud = top_z(tr.map[0]);
    const Polynomial vd = top_z(tr.map[1]);
    CHECK(ud.degree_in(0) <= 0);
    CHECK(vd.degree_in(0) <= 0);
    CHECK(vd.degree_in(1) <= 0);
    CHECK(tr.map[2].degree_in(2) == 0);
    const Polynomial top[] = {ud, vd};
    const std::size_t plane[] = {0, 1};
    auto jt = jacobian(top, plane);
    CHECK(jt(0, 0).is_zero());
    CHECK(jt(1, 0).is_zero());
    CHECK(jt(1, 1).is_zero());
    CHECK(conjugate(tr.map, tr.transform.inverse()) == M("(x+y)*z; -(x+y)*z + y; x^2"));

    CHECK_THROWS_AS(triangularize_top_coefficients(M("x*z; x*z; 0")), NotNilpotentTop);
    CHECK_THROWS_AS(triangularize_top_coefficients(M("x; y; 0")), PreconditionError);
    CHECK_THROWS_AS(triangularize_top_coefficients(M("x; y")), ShapeError);
}

TEST_CASE("dependence certificates for form A") {
    auto c = certify_theorem_2_3(FormAInstance::from_map(M("z^2; x*z; 0")));
    CHECK(c.coefficients == std::vector<Rational>{Rational(0), Rational(0), Rational(1)});
    CHECK_THROWS_AS(certify_theorem_2_3(FormAInstance::from_map(M("y; 0; 0"))), PreconditionError);
    CHECK_THROWS_AS(FormAInstance::from_map(M("x; y; z")), ShapeError);
    CHECK_THROWS_AS(FormAInstance::from_map(M("x; y*z^2; 0")), ShapeError);
    CHECK_THROWS_AS(FormAInstance::from_map(M("x+1; 0; 0")), ShapeError);

    gen::Engine rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        auto draw = gen::random_form_a_conjugate(rng);
        auto cert = certify_theorem_2_3(FormAInstance::from_map(draw.map));
        CHECK(certifies(cert, draw.map.components()));
    }
}

TEST_CASE("form A normalization") {
    const auto reduced = FormAInstance::from_map(M("y*z + y^2; 0; y"));
    CHECK(is_nilpotent(reduced.map));
    auto r = normalize_theorem_2_5(reduced, IndependencePolicy::Skip);
    CHECK(r.transform.is_identity());
    CHECK(r.status == ReductionStatus::ExternalFormReached);
    CHECK(r.map == reduced.map);
    CHECK_THROWS_AS(normalize_theorem_2_5(reduced), PreconditionError);

    // v1 != 0 with u1 constant: the second row becomes v1*u - u1*v.
    const auto shift = FormAInstance::from_map(M("z + y^2; z; 0"));
    REQUIRE(is_nilpotent(shift.map));
    auto s = normalize_theorem_2_5(shift, IndependencePolicy::Skip);
    CHECK_FALSE(s.map[1].depends_on(2));
    CHECK_FALSE(s.map[2].depends_on(2));
    CHECK(conjugate(shift.map, s.transform) == s.map);

    gen::Engine rng(3);
    auto drawn = gen::random_form_a_conjugate(rng);
    CHECK_THROWS_AS(normalize_theorem_2_5(FormAInstance::from_map(drawn.map), IndependencePolicy::Skip),
                    PreconditionError);
    CHECK_THROWS_AS(normalize_theorem_2_5(FormAInstance::from_map(M("y*z; 0; 0"))), PreconditionError);
    CHECK_THROWS_AS(normalize_theorem_2_5(FormAInstance::from_map(M("x*z; 0; 0"))), PreconditionError);
}

TEST_CASE("generalized form B shape") {
    auto f = GeneralizedFormB::from_map(M("x3 + x1^2; 2*x4 + x2; x1*x2; x2^2"));
    CHECK(f.b == std::vector<Rational>{Rational(0), Rational(2)});
    REQUIRE(f.a);
    CHECK(*f.a == std::vector<Rational>{Rational(1), Rational(0)});
    CHECK(f.h2_0 == P("x2", 4));
    CHECK(f.narrow());
    CHECK_FALSE(GeneralizedFormB::from_map(M("x3^2; x4; x1; 0")).a);
    CHECK_THROWS_AS(GeneralizedFormB::from_map(M("0; x3^2; x1; 0")), ShapeError);
    CHECK_THROWS_AS(GeneralizedFormB::from_map(M("0; x3; x4; 0")), ShapeError);
    CHECK_THROWS_AS(GeneralizedFormB::from_map(M("x; y")), ShapeError);
}

TEST_CASE("form B nilpotency system against principal minor sums") {
    auto zero = nilpotency_system_general(GeneralizedFormB::from_map(PolyMap::zero(4)));
    REQUIRE(zero.size() == 4);
    for (const auto& e : zero) CHECK(e.is_zero());

    auto simple = GeneralizedFormB::from_map(M("x3; x4; x2^2; 0"));
    CHECK(is_nilpotent(simple.map));
    for (const auto& e : nilpotency_system_general(simple)) CHECK(e.is_zero());

    gen::Engine rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 4 + trial % 2;
        auto form = gen::random_form_b(rng, n, trial % 3 == 0);
        auto eqs = nilpotency_system_general(form);
        const auto j = jacobian(form.map);
        const Polynomial s1 = principal_minor_sum(j, 1), s2 = principal_minor_sum(j, 2);
        const Polynomial s3 = principal_minor_sum(j, 3), s4 = principal_minor_sum(j, 4);
        const Polynomial h2x2 = form.map[1].derivative(1);
        CHECK(eqs[0] == s1);
        CHECK(eqs[1] == h2x2 * s1 - s2);
        CHECK(eqs[2] == s3);
        CHECK(eqs[3] == s4);
        const bool all_zero = std::all_of(eqs.begin(), eqs.end(), [](const Polynomial& p) { return p.is_zero(); });
        CHECK(all_zero == is_nilpotent(form.map));
    }
}

TEST_CASE("leading part degree bound") {
    auto lin = GeneralizedFormB::from_map(M("x3; x4; x2^2; 0"));
    CHECK(leading_part_bound_check(lin, IndependencePolicy::Skip) == 1);
    auto flat = GeneralizedFormB::from_map(M("x2^2; 0; 0; 0"));
    CHECK(leading_part_bound_check(flat, IndependencePolicy::Skip) == 0);
    CHECK_THROWS_AS(leading_part_bound_check(lin), PreconditionError);
    CHECK_THROWS_AS(leading_part_bound_check(GeneralizedFormB::from_map(M("x1; 0; 0; 0")), IndependencePolicy::Skip),
                    PreconditionError);
    // Dependent nilpotent shape with a quadratic leading part: the bound does not apply.
    auto quad = GeneralizedFormB::from_map(M("x3^2; 0; 0; 0"));
    CHECK_THROWS_AS(leading_part_bound_check(quad, IndependencePolicy::Skip), PreconditionError);

    gen::Engine rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto form = gen::random_form_b(rng, 5, true);
        CHECK(leading_part_bound_check(form, IndependencePolicy::Skip) <= 1);
    }
}

TEST_CASE("form B reduction") {
    auto zero_b = GeneralizedFormB::from_map(M("x2^2; x2^3 - x2^3; 0; 0"));
    auto r0 = reduce_theorem_3_3(zero_b, IndependencePolicy::Skip);
    CHECK(r0.transform.is_identity());

    auto flat = GeneralizedFormB::from_map(M("0; x3; x1^2; 0"));
    auto r1 = reduce_theorem_3_3(flat, IndependencePolicy::Skip);
    CHECK(r1.transform == elementary_permutation(4, 0, 1));
    CHECK(r1.status == ReductionStatus::ExternalFormReached);

    gen::Engine rng(9);
    for (std::size_t n : {4, 5}) {
        auto form = gen::reduction_instance(rng, n, Rational(2));
        REQUIRE(form.narrow());
        REQUIRE(is_nilpotent(form.map));
        CHECK(form.h2() == form.h1() * Rational(2));
        auto r = reduce_theorem_3_3(form, IndependencePolicy::Skip);
        CHECK(r.transform == elementary_row_add(n, 0, Rational(2), 1));
        CHECK(conjugate(r.map, r.transform.inverse()) == form.map);
        CHECK(is_nilpotent(r.map));
        for (std::size_t v = 2; v < n; ++v) CHECK_FALSE(r.map[1].depends_on(v));
    }
    CHECK_THROWS_AS(reduce_theorem_3_3(GeneralizedFormB::from_map(M("0; x1 + x3; 0; 0"))), ShapeError);
}

TEST_CASE("reduction to dimension four") {
    auto f = GeneralizedFormB::from_map(M("x3 + x2^2; x4; x2; 0"));
    auto r = reduce_4d(f);
    CHECK(r.h1 == XY("y^2"));
    CHECK(r.h2.is_zero());
    CHECK(r.h3 == XY("y"));
    CHECK(r.h4.is_zero());
    CHECK(reduce_4d(GeneralizedFormB::from_map(PolyMap::zero(4))) == ReducedForm4D{});
    CHECK_THROWS_AS(reduce_4d(GeneralizedFormB::from_map(M("x3^2; x4; x2; 0"))), ShapeError);

    gen::Engine rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        auto form = gen::random_form_b(rng, 4 + trial % 2, trial % 2 == 0);
        if (!form.a) continue;
        auto red = reduce_4d(form);
        CHECK(is_nilpotent(red.realize()) == is_nilpotent(form.map));
    }
}

TEST_CASE("four dimensional transform") {
    ReducedForm4D h{XY("x*y"), XY("y^2"), XY("x^2"), XY("0")};
    auto id = theorem_4_1_transform(h, Rational(0));
    CHECK(id.transform.is_identity());
    CHECK(id.map == h.realize());

    ReducedForm4D same{XY("y"), XY("0"), XY("x + y^2"), XY("x + y^2")};
    auto t = theorem_4_1_transform(same, Rational(1));
    CHECK(t.map[3].is_zero());
    // Hand expansion: (z + h1(x, y+x), w + h2(x, y+x) - h1(x, y+x), h3(x, y+x), 0).
    CHECK(t.map == M("z + y + x; w - y - x; x + (y+x)^2; 0"));

    CHECK_THROWS_AS(theorem_4_1_transform(same, Rational(2)), PreconditionError);
}

TEST_CASE("keller map over Q[t]") {
    CHECK(keller_parameterized_check(ReducedForm4D{XY("y"), XY("0"), XY("0"), XY("0")}));
    CHECK(is_nilpotent(ReducedForm4D{XY("y"), XY("0"), XY("0"), XY("0")}.realize()));
    CHECK_FALSE(keller_parameterized_check(ReducedForm4D{XY("x"), XY("0"), XY("0"), XY("0")}));
    CHECK(keller_parameterized_check(ReducedForm4D{}));

    gen::Engine rng(19);
    for (int trial = 0; trial < 40; ++trial) {
        auto r = gen::random_reduced_4d(rng, trial % 2 == 0);
        CHECK(keller_parameterized_check(r) == is_nilpotent(r.realize()));
        if (trial % 2 == 0) CHECK(is_nilpotent(r.realize()));
    }
}
