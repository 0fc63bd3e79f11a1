#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ramlab/newton.hpp"

using namespace ramlab;

TEST_CASE("polygon of X^2 - p: one segment, root valuation 1/2, length 2") {
    FieldPtr Q5 = TowerField::make_base(5, 2, 32);
    DensePoly f = poly_from_ints(Q5, {-5, 0, 1});
    NewtonPolygon P = newton_polygon(f);
    CHECK(P.vanishing_order == 0);
    REQUIRE(P.segments.size() == 1);
    CHECK(P.segments[0].root_val_pi == rat(1, 2));
    CHECK(P.segments[0].length == 2);
    CHECK(P.total_length() == f.degree());
}

TEST_CASE("polygon root-valuation multiset under scaling") {
    FieldPtr Q3 = TowerField::make_base(3, 2, 48);
    FieldPtr K = Q3->extend_radical(5, Q3->p_elem(), "g");
    // f = (X - g)(X - g^2)(X - 3) expanded has root valuations {1/5, 2/5, 1} * v(3)
    TowerElem g = K->generator();
    DensePoly f = poly_one(K);
    for (const TowerElem& r : {g, mul(g, g), K->p_elem()})
        f = poly_mul(f, poly_make(K, {neg(r), K->one()}));
    NewtonPolygon P = newton_polygon(f);
    REQUIRE(P.segments.size() == 3);
    CHECK(P.segments[0].root_val_pi == 5);
    CHECK(P.segments[1].root_val_pi == 2);
    CHECK(P.segments[2].root_val_pi == 1);

    // X -> uX for a unit u preserves the multiset
    DensePoly fu = poly_scale_x(f, K->from_int(7));
    NewtonPolygon Pu = newton_polygon(fu);
    REQUIRE(Pu.segments.size() == 3);
    for (size_t i = 0; i < 3; ++i) {
        CHECK(Pu.segments[i].root_val_pi == P.segments[i].root_val_pi);
        CHECK(Pu.segments[i].length == P.segments[i].length);
    }
    // X -> g X shifts every root valuation down by v(g) = 1 pi-unit
    DensePoly fs = poly_scale_x(f, g);
    NewtonPolygon Ps = newton_polygon(fs);
    REQUIRE(Ps.segments.size() == 3);
    for (size_t i = 0; i < 3; ++i)
        CHECK(Ps.segments[i].root_val_pi == P.segments[i].root_val_pi - 1);
}

TEST_CASE("hensel_split X^2 - 1 over Q_3") {
    FieldPtr Q3 = TowerField::make_base(3, 2, 32);
    DensePoly f = poly_from_ints(Q3, {-1, 0, 1});
    auto factors = hensel_split(f);
    REQUIRE(factors.size() == 2);
    DensePoly prod = poly_one(Q3);
    for (const auto& fac : factors) {
        CHECK(fac.degree() == 1);
        prod = poly_mul(prod, fac);
    }
    CHECK(poly_equal_at_precision(prod, f));
}

TEST_CASE("hensel_split separates polygon slopes") {
    FieldPtr Q2 = TowerField::make_base(2, 4, 48);
    // (X^2 - 2)(X - 4) has slopes 1/2 and 2
    DensePoly f = poly_mul(poly_from_ints(Q2, {-2, 0, 1}), poly_from_ints(Q2, {-4, 1}));
    auto factors = hensel_split(f);
    REQUIRE(factors.size() == 2);
    DensePoly prod = poly_one(Q2);
    for (const auto& fac : factors) prod = poly_mul(prod, fac);
    CHECK(poly_equal_at_precision(prod, f));
}

TEST_CASE("hensel_split factors out zero roots") {
    FieldPtr Q3 = TowerField::make_base(3, 2, 32);
    // X^2 (X - 1)
    DensePoly f = poly_from_ints(Q3, {0, 0, -1, 1});
    auto factors = hensel_split(f);
    DensePoly prod = poly_one(Q3);
    for (const auto& fac : factors) prod = poly_mul(prod, fac);
    CHECK(poly_equal_at_precision(prod, f));
}

TEST_CASE("cannot split an irreducible-power situation") {
    FieldPtr Q2 = TowerField::make_base(2, 4, 32);
    // (X + 1)^2 reduces to a square of a linear: no coprime split
    DensePoly f = poly_from_ints(Q2, {1, 2, 1});
    CHECK_THROWS_AS(hensel_split(f), CannotSplitError);
}

TEST_CASE("product identity on random coprime-reduction products") {
    FieldPtr Q5 = TowerField::make_base(5, 1, 32);
    std::mt19937_64 rng(777);
    int done = 0;
    while (done < 100) {
        // two monic polynomials with coprime separable-ish reductions
        auto rand_monic = [&](long d, long off) {
            std::vector<TowerElem> c;
            for (long i = 0; i < d; ++i)
                c.push_back(Q5->from_int(static_cast<long>(rng() % 25) + off));
            c.push_back(Q5->one());
            return poly_make(Q5, std::move(c));
        };
        DensePoly g = rand_monic(2 + static_cast<long>(rng() % 2), 0);
        DensePoly h = rand_monic(2 + static_cast<long>(rng() % 2), 0);
        // skip pairs whose reductions share a factor
        {
            const Fq& k = Q5->residue_field();
            FqPoly gb, hb;
            {
                std::vector<Fq::Elem> cg, ch;
                for (auto& c : g.c) cg.push_back(residue(c));
                for (auto& c : h.c) ch.push_back(residue(c));
                gb = fqp_make(k, cg);
                hb = fqp_make(k, ch);
            }
            if (fqp_gcd(k, gb, hb).degree() != 0) continue;
        }
        DensePoly f = poly_mul(g, h);
        std::vector<DensePoly> factors;
        try {
            factors = hensel_split(f);
        } catch (const CannotSplitError&) {
            // reductions were coprime, so a split must exist
            CHECK(false);
            ++done;
            continue;
        }
        DensePoly prod = poly_one(Q5);
        for (const auto& fac : factors) prod = poly_mul(prod, fac);
        CHECK(poly_equal_at_precision(prod, f));
        ++done;
    }
}

TEST_CASE("certificates") {
    FieldPtr Q5 = TowerField::make_base(5, 2, 32);
    DensePoly f = poly_from_ints(Q5, {-5, 0, 1});
    auto cert = certify_irreducible(f);
    CHECK(cert.verdict == IrreducibilityCertificate::Verdict::irreducible);
    CHECK(cert.reason == IrreducibilityCertificate::Reason::single_slope_denominator);
    CHECK(!cert.proxy_grade);

    // X^2 - 1 is visibly reducible
    auto cert2 = certify_irreducible(poly_from_ints(Q5, {-1, 0, 1}));
    CHECK(cert2.verdict == IrreducibilityCertificate::Verdict::reducible);

    // unramified quadratic: residual-irreducible certificate over F_5
    FieldPtr Q5p = TowerField::make_base(5, 1, 32);
    DensePoly g = poly_from_ints(Q5p, {2, 0, 1});  // X^2 + 2 irreducible mod 5
    auto cert3 = certify_irreducible(g);
    CHECK(cert3.verdict == IrreducibilityCertificate::Verdict::irreducible);
    CHECK(cert3.reason == IrreducibilityCertificate::Reason::residual_irreducible);
    CHECK(cert3.proxy_grade);
}

TEST_CASE("certify_irreducible never contradicts a successful split or root") {
    FieldPtr Q3 = TowerField::make_base(3, 2, 32);
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        auto rand_monic = [&](long d) {
            std::vector<TowerElem> c;
            for (long i = 0; i < d; ++i)
                c.push_back(Q3->from_int(static_cast<long>(rng() % 27) - 13));
            c.push_back(Q3->one());
            return poly_make(Q3, std::move(c));
        };
        DensePoly f = poly_mul(rand_monic(1 + static_cast<long>(rng() % 2)),
                               rand_monic(1 + static_cast<long>(rng() % 2)));
        auto cert = certify_irreducible(f);
        CHECK(cert.verdict != IrreducibilityCertificate::Verdict::irreducible);
    }
}

TEST_CASE("roots_in_field X^2 - 1 over Q_3") {
    FieldPtr Q3 = TowerField::make_base(3, 2, 32);
    DensePoly f = poly_from_ints(Q3, {-1, 0, 1});
    auto res = roots_in_field(f);
    REQUIRE(res.roots.size() == 2);
    CHECK(!res.inconclusive);
    for (const auto& r : res.roots) CHECK(is_zero_at_precision(poly_eval(f, r)));
}

TEST_CASE("roots_in_field finds clustered roots by digit descent") {
    FieldPtr Q3 = TowerField::make_base(3, 2, 48);
    // (X - 3)(X - 3 - 27)(X - 1): two roots share the residue digit at v = 1
    DensePoly f = poly_one(Q3);
    for (long r : {3L, 30L, 1L}) f = poly_mul(f, poly_make(Q3, {Q3->from_int(-r), Q3->one()}));
    auto res = roots_in_field(f);
    REQUIRE(res.roots.size() == 3);
    for (const auto& r : res.roots) CHECK(is_zero_at_precision(poly_eval(f, r)));
}

TEST_CASE("charpoly, resultant and discriminant") {
    FieldPtr Q3 = TowerField::make_base(3, 2, 32);
    DensePoly T = poly_from_ints(Q3, {-3, 0, 1});  // X^2 - 3
    // multiplication by Y has characteristic polynomial T itself
    DensePoly W = charpoly_mod(T, poly_x(Q3));
    CHECK(poly_equal_at_precision(W, T));
    // disc(X^2 - 3) = 12
    TowerElem d = discriminant_monic(T);
    CHECK(equal_at_precision(d, Q3->from_int(12)));
    // Res(T, T') = -12
    TowerElem r = resultant_monic(T, poly_derivative(T));
    CHECK(equal_at_precision(r, Q3->from_int(-12)));
}

TEST_CASE("extend_by_root adjoins sqrt(2) to Q_2") {
    FieldPtr Q2 = TowerField::make_base(2, 2, 48);
    DensePoly f = poly_from_ints(Q2, {-2, 0, 1});
    auto [L, y] = extend_by_root(f, "sqrt2");
    CHECK(L->e() == 2);
    CHECK(valuation_or_throw(y) == rat(1, 2));
    CHECK(is_zero_at_precision(poly_eval(poly_embed(f, L), y)));
}

TEST_CASE("extend_by_root shifts unit-residue clusters") {
    FieldPtr Q2 = TowerField::make_base(2, 2, 48);
    // (X - 1)^2 - 2: roots 1 +- sqrt(2), residue 1, slope appears after shift
    DensePoly f = poly_from_ints(Q2, {-1, -2, 1});
    auto [L, y] = extend_by_root(f, "s");
    CHECK(L->e() == 2);
    CHECK(is_zero_at_precision(poly_eval(poly_embed(f, L), y)));
    CHECK(valuation_or_throw(y) == 0);
}
