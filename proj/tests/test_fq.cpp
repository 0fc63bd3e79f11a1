#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ramlab/fq.hpp"

using namespace ramlab;

TEST_CASE("F_4 arithmetic basics") {
    Fq F(2, 2);
    CHECK(F.size() == 4);
    auto w = F.gen();
    auto one = F.one();
    // w satisfies the irreducible quadratic w^2 + w + 1 over F_2
    auto w2 = F.mul(w, w);
    CHECK(F.equal(F.add(w2, F.add(w, one)), F.zero()));
    CHECK(F.equal(F.mul(w, F.inv(w)), one));
    CHECK(F.equal(F.pow(w, 3), one));
}

TEST_CASE("F_{3^2} inverse and Frobenius root") {
    Fq F(3, 2);
    for (uint64_t i = 1; i < F.size(); ++i) {
        auto a = F.from_index(i);
        CHECK(F.equal(F.mul(a, F.inv(a)), F.one()));
        auto r = F.frob_root(a);
        CHECK(F.equal(F.pow(r, 3), a));
    }
}

TEST_CASE("deterministic modulus") {
    Fq a(2, 8), b(2, 8);
    CHECK(a.modulus() == b.modulus());
}

TEST_CASE("polynomial gcd and xgcd") {
    Fq F(5, 1);
    // (X+1)(X+2) and (X+1)(X+3)
    auto lin = [&](long c) { return fqp_make(F, {F.from_int(c), F.one()}); };
    FqPoly a = fqp_mul(F, lin(1), lin(2));
    FqPoly b = fqp_mul(F, lin(1), lin(3));
    FqPoly g = fqp_gcd(F, a, b);
    CHECK(fqp_equal(F, g, lin(1)));
    FqPoly gg, s, t;
    fqp_xgcd(F, a, b, gg, s, t);
    CHECK(fqp_equal(F, gg, g));
    FqPoly lhs = fqp_add(F, fqp_mul(F, s, a), fqp_mul(F, t, b));
    CHECK(fqp_equal(F, lhs, g));
}

TEST_CASE("roots and irreducibility") {
    Fq F(2, 4);
    // X^2 + X + 1 has the two primitive cube roots of unity in F_16
    FqPoly f = fqp_make(F, {F.one(), F.one(), F.one()});
    auto rs = fqp_roots(F, f);
    CHECK(rs.size() == 2);
    for (auto& r : rs) CHECK(F.is_zero(fqp_eval(F, f, r)));
    CHECK(!fqp_is_irreducible(F, f));

    Fq F2(2, 1);
    FqPoly g = fqp_make(F2, {F2.one(), F2.one(), F2.one()});  // irreducible over F_2
    CHECK(fqp_is_irreducible(F2, g));
}

TEST_CASE("full factorization") {
    Fq F(2, 3);
    // f = X^2 (X+1)^3 (X^2+X+1)
    auto x = fqp_x(F);
    auto xp1 = fqp_make(F, {F.one(), F.one()});
    auto quad = fqp_make(F, {F.one(), F.one(), F.one()});
    FqPoly f = fqp_one(F);
    f = fqp_mul(F, f, fqp_mul(F, x, x));
    f = fqp_mul(F, f, fqp_mul(F, xp1, fqp_mul(F, xp1, xp1)));
    f = fqp_mul(F, f, quad);
    auto parts = fqp_factor(F, f);
    // expect three distinct irreducible factors with multiplicities 2, 3, 1
    CHECK(parts.size() == 3);
    FqPoly rebuilt = fqp_one(F);
    for (auto& [fac, mult] : parts)
        for (unsigned i = 0; i < mult; ++i) rebuilt = fqp_mul(F, rebuilt, fac);
    CHECK(fqp_equal(F, rebuilt, fqp_monic(F, f)));
}
