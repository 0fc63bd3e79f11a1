#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ramlab/tower.hpp"

using namespace ramlab;

namespace {

// K for p = 3, n = 1 presented as the two-step tower: the Eisenstein step for
// lambda = zeta_3 - 1 followed by the radical step X^4 = lambda
FieldPtr lambda_tower_p3(unsigned f_ur = 4, long N = 64) {
    FieldPtr Q3 = TowerField::make_base(3, f_ur, N);
    // (1+lambda)^3 = 1 <=> lambda^2 + 3 lambda + 3 = 0
    FieldPtr K1 = Q3->extend_eisenstein({Q3->from_int(3), Q3->from_int(3)}, "lam");
    FieldPtr K2 = K1->extend_radical(4, K1->generator(), "lam4");
    return K2;
}

}  // namespace

TEST_CASE("base field is a Q_p proxy with e = 1") {
    FieldPtr Q2 = TowerField::make_base(2, 8, 64);
    CHECK(Q2->e() == 1);
    CHECK(Q2->dim() == 8);
    TowerElem three = Q2->from_int(3);
    CHECK(valuation_or_throw(three) == 0);
    CHECK(valuation_or_throw(Q2->p_elem()) == 1);
    // (1+2) + (1-2) = 2
    TowerElem a = add(Q2->from_int(1), Q2->from_int(2));
    TowerElem b = sub(Q2->from_int(1), Q2->from_int(2));
    TowerElem s = add(a, b);
    CHECK(valuation_or_throw(s) == 1);
    CHECK(equal_at_precision(s, Q2->from_int(2)));
}

TEST_CASE("radical step X^15 = 2 gives e = 15 and v(g) = 1/15") {
    FieldPtr Q2 = TowerField::make_base(2, 8, 64);
    FieldPtr K = Q2->extend_radical(15, Q2->p_elem(), "g");
    CHECK(K->e() == 15);
    CHECK(valuation_or_throw(K->generator()) == rat(1, 15));
    // g^15 = 2 exactly
    CHECK(equal_at_precision(pow_i(K->generator(), 15), K->p_elem()));
    // e * v(uniformizer) = 1
    CHECK(valuation_or_throw(K->uniformizer()) * K->e() == 1);
}

TEST_CASE("p = 3 lambda tower: e = 8, v(lambda) = 1/2, v(lambda^{3/4}) = 3/8") {
    FieldPtr K = lambda_tower_p3();
    CHECK(K->e() == 8);
    TowerElem lam = K->generator_by_name("lam");
    CHECK(valuation_or_throw(lam) == rat(1, 2));
    // lambda^{3/4} = (lambda^{1/4})^3
    TowerElem g = K->generator_by_name("lam4");
    CHECK(valuation_or_throw(pow_i(g, 3)) == rat(3, 8));
    // lambda * lambda^3 has valuation 2
    CHECK(valuation_or_throw(mul(lam, pow_i(lam, 3))) == 2);
    // zeta_3 = 1 + lambda satisfies x^2 + x + 1 = 0
    TowerElem zeta = add(K->one(), lam);
    TowerElem val = add(add(mul(zeta, zeta), zeta), K->one());
    CHECK(is_zero_at_precision(val));
}

TEST_CASE("construction errors name the offending step") {
    FieldPtr Q2 = TowerField::make_base(2, 4, 32);
    // non-Eisenstein: constant term a unit
    CHECK_THROWS_AS(Q2->extend_eisenstein({Q2->from_int(1), Q2->from_int(2)}, "bad"),
                    ConstructionError);
    // radical step with gcd(m, j) != 1: X^4 = p^2
    TowerElem p2 = mul(Q2->p_elem(), Q2->p_elem());
    CHECK_THROWS_AS(Q2->extend_radical(4, p2, "bad4"), ConstructionError);
}

TEST_CASE("division tracks precision and inverse is exact at precision") {
    FieldPtr K = lambda_tower_p3();
    TowerElem g = K->generator();
    TowerElem x = add(mul_int(g, 7), K->from_int(5));
    TowerElem xi = inv(x);
    CHECK(is_zero_at_precision(sub(mul(x, xi), K->one())));
    // dividing by something ~0 raises a precision error
    TowerElem tiny = K->zero();
    CHECK_THROWS_AS(inv(tiny), Error);
}

TEST_CASE("division by p shifts valuation down") {
    FieldPtr Q3 = TowerField::make_base(3, 2, 32);
    TowerElem x = Q3->from_int(7);
    TowerElem y = div(x, Q3->p_elem());
    CHECK(valuation_or_throw(y) == -1);
    CHECK(equal_at_precision(mul(y, Q3->p_elem()), x));
}

TEST_CASE("residue images") {
    FieldPtr Q2 = TowerField::make_base(2, 8, 64);
    // 1 + 2x reduces to 1
    TowerElem a = add(Q2->one(), mul_int(Q2->p_elem(), Int(17)));
    auto r = residue(a);
    CHECK(Q2->residue_field().equal(r, Q2->residue_field().one()));
    CHECK_THROWS_AS(residue(div(Q2->one(), Q2->p_elem())), DomainError);

    // genus-2 unit condition: 1 + b3 b2 + b3^2 b4 with b2 = 2^{3/5}, b3 = 1,
    // b4 = 2^{2/5} reduces to 1 (nonzero)
    FieldPtr K = Q2->extend_radical(15, Q2->p_elem(), "g");
    TowerElem b2 = pow_i(K->generator(), 9);
    TowerElem b3 = K->one();
    TowerElem b4 = pow_i(K->generator(), 6);
    TowerElem expr = add(K->one(), add(mul(b3, b2), mul(mul(b3, b3), b4)));
    CHECK(K->residue_field().equal(residue(expr), K->residue_field().one()));
}

TEST_CASE("monomial decomposition covers negative exponents") {
    FieldPtr K = lambda_tower_p3();
    for (long k : {-17L, -8L, -1L, 0L, 1L, 5L, 8L, 23L}) {
        TowerElem m = K->monomial(k);
        CHECK(valuation_or_throw(m) * K->e() == k);
    }
}

TEST_CASE("ultrametric and multiplicativity on random elements") {
    FieldPtr K = lambda_tower_p3(2, 24);
    std::mt19937_64 rng(12345);
    const Int P = K->p_pow_N();
    auto rand_elem = [&]() {
        TowerElem x = K->zero();
        x.exact_zero = false;
        for (auto& c : x.c) {
            Int v = Int(static_cast<unsigned long>(rng() % 1000003));
            mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), P.get_mpz_t());
            c = v;
        }
        normalize(x);
        return x;
    };
    for (int i = 0; i < 500; ++i) {
        TowerElem a = rand_elem(), b = rand_elem();
        auto va = valuation(a), vb = valuation(b);
        if (!va || !vb) continue;
        CHECK(valuation_or_throw(mul(a, b)) == *va + *vb);
        auto vs = valuation(add(a, b));
        if (vs) {
            CHECK(*vs >= std::min(*va, *vb));
            if (*va != *vb) CHECK(*vs == std::min(*va, *vb));
        }
    }
}

TEST_CASE("valuations and residues stable under refinement") {
    FieldPtr K1 = lambda_tower_p3(2, 24);
    FieldPtr K2 = lambda_tower_p3(4, 48);
    // the same integral expressions in both towers
    auto build = [](const FieldPtr& K) {
        TowerElem g = K->generator();
        return add(mul_int(pow_i(g, 5), Int(21)), K->from_int(12));
    };
    TowerElem a1 = build(K1), a2 = build(K2);
    CHECK(valuation_or_throw(a1) == valuation_or_throw(a2));
    // residues agree as elements of the prime field
    auto r1 = residue(a1), r2 = residue(a2);
    CHECK(r1[0] == r2[0]);
}

TEST_CASE("truncated clone keeps arithmetic consistent") {
    FieldPtr K = lambda_tower_p3(2, 48);
    FieldPtr K2 = K->truncated(8);
    CHECK(K2->coeff_prec() == 8);
    TowerElem g = K->generator();
    TowerElem x = add(mul_int(pow_i(g, 3), Int(5)), K->from_int(7));
    TowerElem xt = truncate_to(x, K2);
    CHECK(valuation_or_throw(xt) == valuation_or_throw(x));
}
