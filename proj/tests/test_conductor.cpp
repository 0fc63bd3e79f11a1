#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ramlab/conductor.hpp"

using namespace ramlab;

namespace {

// the composite good-reduction profile: G_0 = G_1 of order pq^2, then the
// center of order p up to break q+1
FiltrationProfile good_profile(long p, long q) {
    FiltrationProfile g;
    g.group_name = "G";
    g.mode = FiltMode::lower;
    g.order0 = Int(p) * q * q;
    g.full_order = g.order0;
    g.label0 = "G";
    g.segs = {{Rat(1), "G", g.order0}, {Rat(q + 1), "Z(G)", Int(p)}};
    g.validate();
    return g;
}

}  // namespace

TEST_CASE("good-reduction conductors: f = (2q+1)(p-1)") {
    for (auto [p, n] : {std::pair<long, long>{2, 1}, {2, 2}, {3, 1}}) {
        long q = 1;
        for (long i = 0; i < n; ++i) q *= p;
        FixedDimTable dims = fixed_dims_good_reduction(p, n);
        auto rep = swan_conductor(good_profile(p, q), dims);
        CHECK(rep.epsilon == q * (p - 1));
        CHECK(rep.swan == (q + 1) * (p - 1));
        CHECK(rep.f == (2 * q + 1) * (p - 1));
    }
    // the type III genus-2 example is the (2,2) member: f = 9
    {
        auto rep = swan_conductor(good_profile(2, 4), fixed_dims_good_reduction(2, 2));
        CHECK(rep.f == 9);
    }
}

TEST_CASE("swan over the tame-smaller base is 1") {
    for (auto [p, n] : {std::pair<long, long>{2, 1}, {2, 2}, {3, 1}}) {
        long q = 1;
        for (long i = 0; i < n; ++i) q *= p;
        FixedDimTable dims = fixed_dims_good_reduction(p, n);
        dims.dims["G:over-base"] = 0;
        auto rep = swan_after_base_change(good_profile(p, q), (p - 1) * (q + 1), p,
                                          "G:over-base", dims);
        CHECK(rep.swan == 1);
    }
    // tame degree 1 changes nothing
    FixedDimTable dims = fixed_dims_good_reduction(2, 1);
    dims.dims["same"] = 0;
    auto a = swan_conductor(good_profile(2, 2), dims);
    auto b = swan_after_base_change(good_profile(2, 2), 1, 2, "same", dims);
    CHECK(a.swan == b.swan);
    CHECK(a.epsilon == b.epsilon);
}

TEST_CASE("hand-composed (2,1) profile over the base sums to 1") {
    // independent check: sum |G'_i|/|G'_0| (2g - dimfix) over the composed
    // profile with |G'_0| = 3 * 8 = 24, wild chain unchanged
    // i = 1: (8/24) * 2 = 2/3; i in {2,3}: (2/24) * 2 = 1/6 each
    Rat total = rat(8, 24) * 2 + rat(2, 24) * 2 + rat(2, 24) * 2;
    CHECK(total == 1);
}

TEST_CASE("type I genus-2 product profile gives sw = 45") {
    FiltrationProfile p;
    p.group_name = "Q8xQ8";
    p.mode = FiltMode::lower;
    p.order0 = 64;
    p.full_order = 64;
    p.label0 = "Q8xQ8";
    p.segs = {{Rat(1), "Q8xQ8", Int(64)},
              {Rat(3), "Z(Q8)xQ8", Int(16)},
              {Rat(31), "1xQ8", Int(8)},
              {Rat(543), "1xZ(Q8)", Int(2)}};
    FixedDimTable dims;
    dims.genus = 2;
    dims.dims["Q8xQ8"] = 0;
    dims.dims["Z(Q8)xQ8"] = 0;
    dims.dims["1xQ8"] = 2;
    dims.dims["1xZ(Q8)"] = 2;
    auto rep = swan_conductor(p, dims);
    CHECK(rep.swan == 45);
    REQUIRE(rep.ledger.size() == 4);
    CHECK(rep.ledger[0].contribution == 4);
    CHECK(rep.ledger[1].contribution == 2);
    CHECK(rep.ledger[2].contribution == 7);
    CHECK(rep.ledger[3].contribution == 32);
}

TEST_CASE("fixed dimension tables") {
    FixedDimTable t = fixed_dims_good_reduction(3, 1);
    CHECK(t.dims.at("1") == 6);  // 2g = q(p-1) = 6
    CHECK(t.dims.at("G") == 0);
    CHECK(t.dims.at("Z(G)") == 0);
    // monotone: larger subgroups fix no more
    CHECK(t.dims.at("G") <= t.dims.at("Z(G)"));
    CHECK(t.dims.at("Z(G)") <= t.dims.at("1"));

    CHECK(fixed_dims_elliptic_q8("1") == 2);
    CHECK(fixed_dims_elliptic_q8("Z(Q8)") == 0);
    CHECK(fixed_dims_elliptic_q8("Q8") == 0);
    CHECK_THROWS_AS(fixed_dims_elliptic_q8("D4"), DomainError);
}

TEST_CASE("sw = 0 iff G_1 trivial") {
    FiltrationProfile tame;
    tame.group_name = "C3";
    tame.mode = FiltMode::lower;
    tame.order0 = 3;
    tame.full_order = 3;
    tame.label0 = "C3";
    // no wild segments at all: G_1 = 1
    FixedDimTable dims;
    dims.genus = 1;
    dims.dims["C3"] = 0;
    auto rep = swan_conductor(tame, dims);
    CHECK(rep.swan == 0);
    CHECK(rep.f == rep.epsilon);
}

TEST_CASE("missing table entries and non-integral totals abort") {
    FiltrationProfile g = good_profile(2, 2);
    FixedDimTable dims;
    dims.genus = 1;
    dims.dims["G"] = 0;  // Z(G) missing
    CHECK_THROWS_AS(swan_conductor(g, dims), DomainError);
    // a deliberately inconsistent table: contribution 1/8 * 1 not integral
    FiltrationProfile h;
    h.group_name = "H";
    h.mode = FiltMode::lower;
    h.order0 = 8;
    h.full_order = 8;
    h.label0 = "H";
    h.segs = {{Rat(1), "S", Int(1)}};
    // order-1 segment is rejected by validate inside swan_conductor
    CHECK_THROWS(swan_conductor(h, dims));
}
