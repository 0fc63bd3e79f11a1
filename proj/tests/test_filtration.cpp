#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ramlab/filtration.hpp"
#include "ramlab/newton.hpp"

using namespace ramlab;

namespace {

FiltrationProfile q8_profile(long b1, long b2) {
    FiltrationProfile p;
    p.group_name = "Q8";
    p.mode = FiltMode::lower;
    p.order0 = 8;
    p.full_order = 8;
    p.label0 = "Q8";
    p.segs = {{Rat(b1), "Q8", Int(8)}, {Rat(b2), "Z(Q8)", Int(2)}};
    p.validate();
    return p;
}

}  // namespace

TEST_CASE("Herbrand transform of the Q8 profiles") {
    FiltrationProfile a = q8_profile(1, 3);
    FiltrationProfile ua = to_upper(a);
    CHECK(ua.segs[0].upto == 1);
    CHECK(ua.segs[1].upto == rat(3, 2));

    FiltrationProfile b = q8_profile(5, 69);
    FiltrationProfile ub = to_upper(b);
    CHECK(ub.segs[0].upto == 5);
    CHECK(ub.segs[1].upto == 21);

    // psi of the product's upper breaks: psi(21) = 1 + 2*4 + (7/2)*8 + 16*32 = 543
    bool adv = false;
    FiltrationProfile prod = product_arith_disjoint(ua, ub, &adv);
    CHECK(adv);
    FiltrationProfile lower = to_lower(prod);
    REQUIRE(lower.segs.size() == 4);
    CHECK(lower.segs[0].upto == 1);
    CHECK(lower.segs[1].upto == 3);
    CHECK(lower.segs[2].upto == 31);
    CHECK(lower.segs[3].upto == 543);
    CHECK(lower.segs[0].order == 64);
    CHECK(lower.segs[1].order == 16);
    CHECK(lower.segs[2].order == 8);
    CHECK(lower.segs[3].order == 2);
}

TEST_CASE("trivial group: phi is the identity") {
    FiltrationProfile t;
    t.group_name = "1";
    t.mode = FiltMode::lower;
    t.order0 = 1;
    t.full_order = 1;
    t.label0 = "1";
    HerbrandFn phi = phi_of(t);
    CHECK(phi.eval(rat(7, 3)) == rat(7, 3));
}

TEST_CASE("psi . phi = id on random profiles") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        FiltrationProfile p;
        p.mode = FiltMode::lower;
        p.group_name = "rand";
        long order = 1 << (1 + rng() % 6);
        p.order0 = order;
        p.full_order = order;
        p.label0 = "g";
        long brk = 0;
        while (order > 1) {
            brk += 1 + rng() % 40;
            long drop = 1 << (1 + rng() % 3);
            long next = std::max(1L, order / drop);
            p.segs.push_back({Rat(brk), "g" + std::to_string(next), Int(order)});
            order = next;
            if (order == 1) break;
            if (rng() % 3 == 0) break;
        }
        if (p.segs.empty()) continue;
        p.validate();
        HerbrandFn phi = phi_of(p);
        HerbrandFn psi = phi.inverse();
        for (int s = 0; s < 8; ++s) {
            Rat x = rat(static_cast<long>(rng() % 2000), 1 + static_cast<long>(rng() % 7));
            CHECK(psi.eval(phi.eval(x)) == x);
        }
        // round trip through upper numbering
        FiltrationProfile back = to_lower(to_upper(p));
        REQUIRE(back.segs.size() == p.segs.size());
        for (size_t i = 0; i < p.segs.size(); ++i) CHECK(back.segs[i].upto == p.segs[i].upto);
    }
}

TEST_CASE("compose_tower reproduces the two-step composite") {
    // sub = Z/p with break q+1, quot = (Z/p)^{2n} with break 1
    // composite: G_0 = G_1 = pq^2 > Z = G_2 = ... = G_{q+1} > 1  (p = 2, q = 2)
    FiltrationProfile sub;
    sub.mode = FiltMode::lower;
    sub.group_name = "Z(G)";
    sub.order0 = 2;
    sub.full_order = 2;
    sub.label0 = "Z(G)";
    sub.segs = {{Rat(3), "Z(G)", Int(2)}};
    FiltrationProfile quot;
    quot.mode = FiltMode::lower;
    quot.group_name = "G/Z";
    quot.order0 = 4;
    quot.full_order = 4;
    quot.label0 = "G/Z";
    quot.segs = {{Rat(1), "G/Z", Int(4)}};
    ComposeGlue glue{"G", {{"G/Z", "G"}}};
    FiltrationProfile G = compose_tower(sub, quot, glue);
    REQUIRE(G.segs.size() == 2);
    CHECK(G.order0 == 8);
    CHECK(G.segs[0].upto == 1);
    CHECK(G.segs[0].order == 8);
    CHECK(G.segs[0].label == "G");
    CHECK(G.segs[1].upto == 3);
    CHECK(G.segs[1].order == 2);
    CHECK(G.segs[1].label == "Z(G)");
    // pushing the composite through phi reproduces the quotient's upper part
    FiltrationProfile up = to_upper(G);
    CHECK(up.segs[0].upto == to_upper(quot).segs[0].upto);
}

TEST_CASE("compose_tower rejects tame parts and incompatible chains") {
    FiltrationProfile sub;
    sub.mode = FiltMode::lower;
    sub.order0 = 2;
    sub.full_order = 2;
    sub.label0 = "H";
    sub.segs = {{Rat(1), "H", Int(2)}};
    FiltrationProfile quot = sub;
    quot.full_order = 6;  // tame index 3
    ComposeGlue glue{"G", {}};
    CHECK_THROWS_AS(compose_tower(sub, quot, glue), DomainError);
}

TEST_CASE("product projects back to the factors") {
    FiltrationProfile a = to_upper(q8_profile(1, 3));
    FiltrationProfile b = to_upper(q8_profile(5, 69));
    FiltrationProfile prod = product_arith_disjoint(a, b, nullptr);
    // order at u recovers |A^u| * |B^u|
    for (long num = 0; num <= 44; ++num) {
        Rat u = rat(num, 2);
        CHECK(prod.order_at(u) == a.order_at(u) * b.order_at(u));
    }
}

TEST_CASE("tame base change multiplies G_0 and keeps the wild chain") {
    FiltrationProfile g = q8_profile(1, 3);
    FiltrationProfile over = tame_base_change(g, 3, 2, "G0'");
    CHECK(over.order0 == 24);
    CHECK(over.segs.size() == 2);
    CHECK(over.segs[0].upto == 1);
    CHECK(over.segs[1].upto == 3);
    CHECK_THROWS_AS(tame_base_change(g, 4, 2, "x"), DomainError);  // 2 | 4
    // degree 1 is the identity
    FiltrationProfile same = tame_base_change(g, 1, 2, g.label0);
    CHECK(same.order0 == g.order0);
}

TEST_CASE("filtration_from_roots on X^2 - 2 over Q_2") {
    FieldPtr Q2 = TowerField::make_base(2, 4, 64);
    DensePoly f = poly_from_ints(Q2, {-2, 0, 1});
    auto [L, y] = extend_by_root(f, "sqrt2");
    // conjugates of the generator: +-sqrt2
    std::vector<TowerElem> conj = {y, neg(y)};
    auto res = filtration_from_roots(L, conj, L->uniformizer(), "Gal",
                                     [](const Int& o) { return "C" + o.get_str(); });
    REQUIRE(res.igs.size() == 1);
    CHECK(res.igs[0] == 3);  // v(2 sqrt2) = 3 pi-units
    CHECK(res.different_pi == 3);
    REQUIRE(res.profile.segs.size() == 1);
    CHECK(res.profile.segs[0].upto == 2);  // break t with i_G = t + 1
    CHECK(res.profile.segs[0].order == 2);
    // consistency with the single-break different formula: v_L(D) = (p-1)(t+1)
    CHECK(break_from_different(res.different_pi, 2) == 2);
}

TEST_CASE("Hyodo different formula") {
    // s = 1 kills the correction term
    auto d1 = different_from_kummer(KummerDatum{2, 1, Int(2)});
    CHECK(d1.vK_pi == 2);
    CHECK(d1.vL_pi == 4);
    // p = 3, v_K(3) = 3, s = 2: v_K(D) = 3 - 2/3 = 7/3, v_L(D) = 7
    auto d2 = different_from_kummer(KummerDatum{3, 2, Int(3)});
    CHECK(d2.vK_pi == rat(7, 3));
    CHECK(d2.vL_pi == 7);
    // out of the Hyodo range
    CHECK_THROWS_AS(different_from_kummer(KummerDatum{2, 9, Int(2)}), DomainError);
    CHECK_THROWS_AS(different_from_kummer(KummerDatum{2, 2, Int(3)}), DomainError);
}

TEST_CASE("break_from_different") {
    CHECK(break_from_different(Int(4), 2) == 3);
    CHECK(break_from_different(Int(2), 2) == 1);
    // (p-1)(q+2) -> q+1 at p=3, q=3
    CHECK(break_from_different(Int(10), 3) == 4);
    CHECK_THROWS_AS(break_from_different(Int(3), 3), DomainError);
}

TEST_CASE("different via the uniformizer charpoly agrees with Hyodo") {
    // explicit degree-3 extension of a field with v_K(3) = 3: X^3 = 1 + w pi^2
    FieldPtr Q3 = TowerField::make_base(3, 2, 96);
    FieldPtr K = Q3->extend_radical(3, Q3->from_int(3), "c3");  // v_K(3) = 3
    // shifted generator: delta^3 + 3 delta^2 + 3 delta - w pi^2 = 0, w = 1
    TowerElem pi2 = pow_i(K->generator(), 2);
    std::vector<TowerElem> coeffs = {neg(pi2), K->from_int(3), K->from_int(3)};
    FieldPtr L = K->extend_root(coeffs, 2, "delta");
    TowerElem delta = L->generator();
    // true uniformizer: v(delta) = 2/3 pi_K, so delta^2 / pi_K has v = 1/3
    TowerElem piL = div(mul(delta, delta), L->generator_at(1));
    CHECK(valuation_or_throw(piL) * L->e() == 1);
    // v_L(D) = v_L(H'(piL)) for the charpoly H of the uniformizer
    DensePoly T = poly_make(L->parent_ptr(), coeffs);
    T.c.push_back(L->parent_ptr()->one());
    // charpoly of piL over K: use the multiplication matrix in K[Y]/(T)
    // piL = Y^2 / pi_K mod T
    DensePoly num = poly_make(L->parent_ptr(), {K->zero(), K->zero(), inv(K->generator())});
    DensePoly H = charpoly_mod(T, num);
    DensePoly Hp = poly_derivative(H);
    TowerElem dval = poly_eval(poly_embed(Hp, L), piL);
    // Hyodo: v_K(D) = 3 + (2/3)(1 - 2) = 7/3, v_L(D) = 7
    CHECK(valuation_or_throw(dval) * L->e() == 7);
}

TEST_CASE("kummer_normal_form") {
    FieldPtr Q2 = TowerField::make_base(2, 4, 64);
    FieldPtr K = Q2->extend_radical(3, Q2->p_elem(), "c3");  // v_K(2) = 3
    // U = 1 + pi^5: already in normal position (5 odd)
    TowerElem U = add(K->one(), pow_i(K->generator(), 5));
    auto nf = kummer_normal_form(U);
    CHECK(!nf.trivial_range);
    CHECK(nf.s == 5);
    // U = (1 + pi)^2 (1 + pi^3): the square head must be peeled off
    TowerElem U2 = mul(pow_i(add(K->one(), K->generator()), 2),
                       add(K->one(), pow_i(K->generator(), 3)));
    auto nf2 = kummer_normal_form(U2);
    CHECK(!nf2.trivial_range);
    CHECK(nf2.s == 3);
    // U = (1 + pi)^2 alone: trivial range (the defect climbs past p/(p-1) v(p))
    auto nf3 = kummer_normal_form(pow_i(add(K->one(), K->generator()), 2));
    CHECK(nf3.trivial_range);
}

TEST_CASE("sum of i_G equals v_L(different) on produced profiles") {
    FieldPtr Q2 = TowerField::make_base(2, 4, 64);
    DensePoly f = poly_from_ints(Q2, {-2, 0, 1});
    auto [L, y] = extend_by_root(f, "s");
    auto res = filtration_from_roots(L, {y, neg(y)}, L->uniformizer(), "Gal",
                                     [](const Int& o) { return o.get_str(); });
    Int expect = 0;
    Rat prev = 0;
    // different = sum over segments of (order - 1) * length
    for (auto& s : res.profile.segs) {
        expect += (s.order - 1) * Rat(s.upto - prev).get_num();
        prev = s.upto;
    }
    expect += res.profile.order0 - 1;  // the i >= 0 part: (|G_0| - 1) * 1 for [0]
    CHECK(res.different_pi == expect);
}
