#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ramlab/expr.hpp"

using namespace ramlab;

TEST_CASE("tower building from declarative specs") {
    TowerSpec spec;
    spec.p = 2;
    spec.f_ur = 8;
    spec.precision = 64;
    spec.steps = {RadicalStepSpec{15, "p", "g"}};
    FieldPtr K = build_tower(spec);
    CHECK(K->e() == 15);
    CHECK(valuation_or_throw(K->generator_by_name("g")) == rat(1, 15));
}

TEST_CASE("rational powers of p resolve to canonical monomials") {
    TowerSpec spec;
    spec.p = 2;
    spec.f_ur = 4;
    spec.precision = 48;
    spec.steps = {RadicalStepSpec{15, "p", "g"}};
    FieldPtr K = build_tower(spec);
    // 2^{3/5} = g^9 exactly in this tower
    TowerElem x = parse_element(K, "2^(3/5)");
    CHECK(equal_at_precision(x, pow_i(K->generator(), 9)));
    CHECK(valuation_or_throw(x) == rat(3, 5));
    // 2^{2/5} = g^6
    CHECK(valuation_or_throw(parse_element(K, "2^(2/5)")) == rat(2, 5));
    // unattainable valuation
    CHECK_THROWS_AS(parse_element(K, "2^(1/7)"), DomainError);
    // rational power of a non-p-power
    CHECK_THROWS_AS(parse_element(K, "3^(1/5)"), DomainError);
}

TEST_CASE("arithmetic in expressions") {
    TowerSpec spec;
    spec.p = 3;
    spec.f_ur = 2;
    spec.precision = 32;
    spec.steps = {EisensteinStepSpec{{"3", "3"}, "lam"}};
    FieldPtr K = build_tower(spec);
    TowerElem a = parse_element(K, "1 + lam*lam + 2*lam");
    TowerElem lam = K->generator_by_name("lam");
    CHECK(equal_at_precision(a, add(K->one(), add(mul(lam, lam), mul_int(lam, Int(2))))));
    CHECK(valuation_or_throw(parse_element(K, "lam^3 / p")) == rat(1, 2));
    CHECK(valuation_or_throw(parse_element(K, "-p^2")) == 2);
    CHECK_THROWS_AS(parse_element(K, "lam +"), DomainError);
    CHECK_THROWS_AS(parse_element(K, "nosuchgen"), DomainError);
}

TEST_CASE("negative radicands parse with odd roots only") {
    TowerSpec spec;
    spec.p = 2;
    spec.f_ur = 2;
    spec.precision = 32;
    spec.steps = {RadicalStepSpec{5, "-2", "lam15"}};
    FieldPtr K = build_tower(spec);
    CHECK(K->e() == 5);
    // (-2)^{3/5} resolves (odd denominator), with the sign carried
    TowerElem x = parse_element(K, "(-2)^(3/5)");
    CHECK(valuation_or_throw(x) == rat(3, 5));
    CHECK_THROWS_AS(parse_element(K, "(-2)^(1/2)"), DomainError);
}

TEST_CASE("Eisenstein spec validation") {
    TowerSpec spec;
    spec.p = 5;
    spec.f_ur = 1;
    spec.precision = 24;
    spec.steps = {EisensteinStepSpec{{"2", "5"}, "bad"}};  // constant term a unit
    CHECK_THROWS_AS(build_tower(spec), ConstructionError);
}
