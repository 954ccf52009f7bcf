#include "support.hpp"

#include "nilmap/json_io.hpp"

#include <doctest.h>

using namespace nilmap;
using testing_support::M;
using testing_support::P;

TEST_CASE("json views of reports and certificates") {
    const VarNames names = VarNames::standard(2);
    const auto report = nilpotency_equations(M("y; 0"));
    const auto j = json_io::to_json(report, names);
    CHECK(j["nilpotent"] == true);
    CHECK(j["sigma"] == json_io::json::array({"0", "0"}));
    CHECK_FALSE(j.contains("witness"));

    const auto bad = json_io::to_json(nilpotency_equations(M("x; 0")), names);
    CHECK(bad["witness"]["k"] == 1);
    CHECK(bad["witness"]["sigma_k"] == "1");

    const Polynomial comps[] = {P("x + y"), P("2*x + 2*y"), P("x")};
    const auto cert = linear_dependence(comps);
    REQUIRE(cert);
    CHECK(json_io::to_json(*cert)["coefficients"] == json_io::json::array({"1", "-1/2", "0"}));

    RationalMatrix m = RationalMatrix::identity(2);
    m(0, 1) = Rational(3, 4);
    CHECK(json_io::to_json(m) == json_io::json::parse(R"([["1","3/4"],["0","1"]])"));
}

TEST_CASE("tame factorization json round trip") {
    const PolyMap f = M("x + y^2 + z; y + z^3; z");
    const auto dec = classify_and_decompose(f);
    const VarNames names = VarNames::standard(3);
    const auto j = json_io::to_json(dec.factorization, names);
    CHECK(j["n"] == 3);
    const auto back = json_io::factorization_from_json(j, names);
    CHECK(compose_factorization(back) == f);

    TameFactorization mixed{2, {LinearMap(RationalMatrix::from_rows({{Rational(0), Rational(1)}, {Rational(1), Rational(0)}})),
                                ElementaryMap(2, 1, P("x^2", 2))}};
    const auto mj = json_io::to_json(mixed, VarNames::standard(2));
    CHECK(mj["factors"][0]["type"] == "linear");
    CHECK(mj["factors"][1] == json_io::json::parse(R"({"type":"elementary","i":2,"Q":"x^2"})"));
    CHECK(compose_factorization(json_io::factorization_from_json(mj, VarNames::standard(2))) == compose_factorization(mixed));
    CHECK_THROWS(json_io::factorization_from_json(json_io::json::parse(R"({"n":2,"factors":[{"type":"odd"}]})"),
                                                  VarNames::standard(2)));
}

TEST_CASE("theorem violation payload") {
    const TheoremViolation e("certify_theorem_2_3", "no certificate", instance_json(M("y; 0")));
    const auto j = json_io::to_json(e);
    CHECK(j["error"] == "TheoremViolation");
    CHECK(j["result"] == "certify_theorem_2_3");
    CHECK(j["instance"]["components"] == json_io::json::array({"y", "0"}));
}
