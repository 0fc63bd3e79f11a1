#include "ramlab/monodromy.hpp"

#include <sstream>

#include "ramlab/expr.hpp"

namespace ramlab {

namespace {

Int binom(unsigned nn, unsigned kk) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), nn, kk);
    return r;
}

DensePoly poly_pow(const DensePoly& f, long e) {
    DensePoly r = poly_one(f.F);
    for (long i = 0; i < e; ++i) r = poly_mul(r, f);
    return r;
}

}  // namespace

GoodReductionScenario make_good_reduction(unsigned p, unsigned n, const std::string& c_expr,
                                          unsigned f_ur, long precision) {
    if (n < 1) throw DomainError("good-reduction scenario needs n >= 1");
    GoodReductionScenario sc;
    sc.p = p;
    sc.n = n;
    sc.q = 1;
    for (unsigned i = 0; i < n; ++i) sc.q *= p;
    sc.f_ur = f_ur;
    sc.precision = precision;
    sc.c_expr = c_expr;

    FieldPtr base = TowerField::make_base(p, f_ur, precision);
    if (p == 2) {
        // lambda = zeta_2 - 1 = -2; K = Q_2^ur((-2)^{1/(q+1)})
        sc.K = base->extend_radical(sc.q + 1, base->from_int(-2), "lam1q");
        sc.lam = sc.K->from_int(-2);
    } else {
        // minimal polynomial of lambda^{1/(q+1)}: Phi_p(1 + X^{q+1}),
        // an Eisenstein polynomial of degree (p-1)(q+1)
        long deg = static_cast<long>(p - 1) * (sc.q + 1);
        std::vector<TowerElem> coeffs(deg, base->zero());
        for (unsigned t = 0; t + 1 < p; ++t)
            coeffs[static_cast<size_t>(t) * (sc.q + 1)] = base->from_int(binom(p, t + 1));
        sc.K = base->extend_eisenstein(coeffs, "lam1q");
        sc.lam = pow_i(sc.K->generator(), sc.q + 1);
    }
    sc.lam_pq1 = pow_i(sc.K->generator(), p);

    // a_n = (-1)^q (-p)^{p + p^2 + ... + q},  b_n = -(-p)^{1 + p + ... + p^{n-1}}
    Int E = 0, Eb = 0, pk = 1;
    for (unsigned i = 0; i < n; ++i) {
        Eb += pk;
        pk *= p;
        E += pk;
    }
    Int mp = -Int(p);
    Int an = 1, bn = 1;
    for (Int i = 0; i < E; ++i) an *= mp;
    for (Int i = 0; i < Eb; ++i) bn *= mp;
    if (sc.q % 2 == 1) an = -an;
    bn = -bn;
    sc.a_n = an;
    sc.b_n = bn;
    {
        Int bp = 1;
        for (unsigned i = 0; i < p; ++i) bp *= bn;
        if (bp != an) throw Error("b_n^p != a_n for p = " + std::to_string(p));
    }

    sc.c = parse_element(sc.K, c_expr);
    auto vc = valuation(sc.c);
    Rat vlam = valuation_or_throw(sc.lam_pq1);
    sc.wild = vc.has_value() && *vc < vlam;
    TowerElem cpc = sub(pow_i(sc.c, p), sc.c);
    auto vcpc = valuation(cpc);
    sc.hyp_cpc = !vcpc.has_value() || *vcpc >= 1;
    return sc;
}

DensePoly build_fqc(const GoodReductionScenario& sc) {
    std::vector<TowerElem> c(static_cast<size_t>(sc.q) + 2, sc.K->zero());
    c[0] = sc.K->one();
    c[sc.q] = sc.c;
    c[sc.q + 1] = sc.K->one();
    return poly_make(sc.K, std::move(c));
}

DensePoly build_Lc(const GoodReductionScenario& sc) {
    DensePoly f = build_fqc(sc);
    DensePoly fq1 = poly_pow(f, sc.q - 1);
    DensePoly cx = poly_make(sc.K, {sc.c, sc.K->one()});
    DensePoly rhs = poly_scale(poly_mul(cx, fq1), sc.K->from_int(sc.a_n));
    std::vector<TowerElem> xq2(static_cast<size_t>(sc.q) * sc.q + 1, sc.K->zero());
    xq2.back() = sc.K->one();
    return poly_sub(poly_make(sc.K, std::move(xq2)), rhs);
}

Rat step1_root_valuation(const GoodReductionScenario& sc) {
    if (!sc.wild) throw DomainError("root-valuation analysis applies to the wild branch only");
    Rat va = Rat(0);
    {
        Int an = sc.a_n < 0 ? -sc.a_n : sc.a_n;
        long v = 0;
        while (an % sc.p == 0) {
            an /= sc.p;
            ++v;
        }
        va = Rat(v);
    }
    Rat expected = (va + valuation_or_throw(sc.c)) / Rat(sc.q * sc.q);
    NewtonPolygon P = newton_polygon(build_Lc(sc));
    if (P.vanishing_order != 0 || P.segments.size() != 1)
        throw Error("monodromy polynomial polygon is not a single segment");
    const auto& seg = P.segments.front();
    if (seg.length != sc.q * sc.q)
        throw Error("monodromy polynomial polygon has the wrong length");
    if (seg.root_val_pi != expected * sc.K->e())
        throw Error("polygon root valuation " + rat_str(seg.root_val_pi) +
                    " pi-units disagrees with v(a_n c)/q^2 = " + rat_str(expected * sc.K->e()));
    return expected;
}

SplittingField build_splitting_field(const GoodReductionScenario& sc) {
    if (!sc.wild) throw DomainError("splitting field machinery applies to the wild branch only");
    SplittingField sf;
    DensePoly Lc = build_Lc(sc);
    DensePoly T = poly_monicize(Lc);
    const long q2 = sc.q * sc.q;
    const long q2p = q2 / sc.p;

    // direct route: the polygon of L_c itself can carry the full certificate
    // (the case v(c) = (a/b) v(p) with b sharing no factor with p)
    {
        IrreducibilityCertificate direct = certify_irreducible(T);
        if (direct.verdict == IrreducibilityCertificate::Verdict::irreducible &&
            direct.reason == IrreducibilityCertificate::Reason::single_slope_denominator) {
            sf.W = T;
            sf.cert = direct;
            sf.via_charpoly = false;
            auto [L, yroot] = extend_by_root(T, "y");
            sf.L = L;
            RootSearchResult rr = roots_in_field(poly_embed(Lc, L));
            if (rr.inconclusive || rr.roots.size() != static_cast<size_t>(q2))
                throw PrecisionError("expected " + std::to_string(q2) +
                                     " roots of the monodromy polynomial, found " +
                                     std::to_string(rr.roots.size()));
            sf.roots = rr.roots;
            int hit = -1;
            for (size_t i = 0; i < sf.roots.size(); ++i) {
                sf.gen_conjugates.push_back(sf.roots[i]);
                if (equal_at_precision(sf.roots[i], yroot)) hit = static_cast<int>(i);
            }
            if (hit < 0) throw PrecisionError("no root matches the adjoined generator");
            sf.y = sf.roots[hit];
            sf.z = L->uniformizer();
            return sf;
        }
    }

    // charpoly route: w = y^{q^2/p} - c b_n generates K(y) with slope
    // denominator exactly q^2
    std::vector<TowerElem> gcoeffs(static_cast<size_t>(q2p) + 1, sc.K->zero());
    gcoeffs[0] = neg(mul(sc.c, sc.K->from_int(sc.b_n)));
    gcoeffs[q2p] = sc.K->one();
    DensePoly g = poly_make(sc.K, std::move(gcoeffs));

    sf.W = charpoly_mod(T, g);
    sf.cert = certify_irreducible(sf.W);
    sf.via_charpoly = true;
    if (sf.cert.verdict != IrreducibilityCertificate::Verdict::irreducible ||
        sf.cert.reason != IrreducibilityCertificate::Reason::single_slope_denominator)
        throw Error("splitting-field certificate failed: " + sf.cert.detail +
                    (sc.hyp_cpc ? "" : " (hypothesis v(c^p - c) >= v(p) fails here)"));

    auto [L, wroot] = extend_by_root(sf.W, "w");
    sf.L = L;
    if (!equal_at_precision(wroot, L->generator()))
        throw Error("splitting-field generator acquired an unexpected shift");

    DensePoly LcL = poly_embed(Lc, L);
    RootSearchResult rr = roots_in_field(LcL);
    if (rr.inconclusive || rr.roots.size() != static_cast<size_t>(q2))
        throw PrecisionError("expected " + std::to_string(q2) + " roots of the monodromy "
                             "polynomial in its splitting field, found " +
                             std::to_string(rr.roots.size()));
    sf.roots = rr.roots;

    DensePoly gL = poly_embed(g, L);
    int hit = -1;
    for (size_t i = 0; i < sf.roots.size(); ++i) {
        sf.gen_conjugates.push_back(poly_eval(gL, sf.roots[i]));
        if (equal_at_precision(sf.gen_conjugates.back(), wroot)) {
            if (hit >= 0) throw PrecisionError("generator matches several conjugates");
            hit = static_cast<int>(i);
        }
    }
    if (hit < 0) throw PrecisionError("no root of the monodromy polynomial matches the generator");
    sf.y = sf.roots[hit];

    TowerElem piK = L->generator_at(1);
    sf.z = mul(pow_i(piK, q2), inv(wroot));
    {
        auto vz = valuation_pi(sf.z);
        if (!vz || *vz != 1) throw Error("z = pi_K^{q^2}/w is not a uniformizer");
    }
    return sf;
}

Step5Report step5_root_separation(const GoodReductionScenario& sc, const SplittingField& sf) {
    Step5Report rep;
    DensePoly LcL = poly_embed(build_Lc(sc), sf.L);
    rep.lc_prime_val = valuation_or_throw(poly_eval(poly_derivative(LcL), sf.y));
    Rat vlam = valuation_or_throw(sc.lam_pq1);
    rep.expected = Rat(sc.q * sc.q - 1) * vlam;
    rep.all_pairs_equal = true;
    bool first = true;
    for (size_t i = 0; i < sf.roots.size(); ++i)
        for (size_t j = i + 1; j < sf.roots.size(); ++j) {
            Rat v = valuation_or_throw(sub(sf.roots[i], sf.roots[j]));
            if (first) {
                rep.pairwise_val = v;
                first = false;
            } else if (v != rep.pairwise_val) {
                rep.all_pairs_equal = false;
            }
        }
    return rep;
}

namespace {

// coefficient-wise membership in lambda^p m[T] after S = lambda^{p/(1+q)} T:
// the S^k coefficient c_k must satisfy v(c_k) + k v(lambda^{p/(1+q)}) > p/(p-1)
bool in_lambda_p_m(const DensePoly& D, const Rat& vlam_pq1, unsigned p, const Rat& extra) {
    Rat thr = rat(p, p - 1) + extra;
    for (size_t k = 0; k < D.c.size(); ++k) {
        const TowerElem& c = D.c[k];
        if (c.exact_zero) continue;
        Rat shift = Rat(static_cast<long>(k)) * vlam_pq1;
        auto v = valuation(c);
        if (v) {
            if (!(*v + shift > thr)) return false;
        } else {
            if (!(c.prec + shift > thr))
                throw PrecisionError("congruence check undecided at coefficient " +
                                     std::to_string(k));
        }
    }
    return true;
}

}  // namespace

Step3Report verify_step3(const GoodReductionScenario& sc, const SplittingField& sf) {
    Step3Report rep;
    const FieldPtr& L = sf.L;
    const unsigned p = sc.p;
    const long q = sc.q;
    const TowerElem& y = sf.y;
    TowerElem fy = poly_eval(poly_embed(build_fqc(sc), L), y);
    TowerElem cL = L->embed(sc.c);
    Rat vlam_pq1 = valuation_or_throw(sc.lam_pq1);

    // B_n = -y^q, then B_i = f(y) B_{i+1}^p / (-p f(y))^p downward
    std::vector<TowerElem> B(sc.n + 1, L->zero());
    B[sc.n] = neg(pow_i(y, q));
    TowerElem mpf = neg(mul_int(fy, Int(p)));  // -p f(y)
    for (long i = sc.n - 1; i >= 0; --i)
        B[i] = div(mul(fy, pow_i(B[i + 1], p)), pow_i(mpf, p));

    // closed form B_i / f(y) = (-p) (-p)^{-1-p-...-p^{n-i}} (-y^q / f(y))^{p^{n-i}}
    for (unsigned i = 0; i <= sc.n; ++i) {
        Int Eexp = 0, pk = 1;  // 1 + p + ... + p^{n-i}
        for (unsigned t = 0; t + i <= sc.n; ++t) {
            Eexp += pk;
            pk *= p;
        }
        long pni = 1;
        for (unsigned t = 0; t + i < sc.n; ++t) pni *= p;
        TowerElem mp = L->from_int(-static_cast<long>(p));
        TowerElem rhs = mul(mp, pow_i(mp, -to_long(Eexp)));
        rhs = mul(rhs, pow_i(neg(div(pow_i(y, q), fy)), pni));
        if (!equal_at_precision(div(B[i], fy), rhs)) {
            rep.closed_form_ok = false;
            rep.failing_index = i;
        }
    }

    // valuation bounds and integrality
    for (unsigned i = 1; i <= sc.n; ++i) {
        Rat bound = 0;
        Rat pw = 1;
        for (unsigned t = 0; t < i; ++t) {
            bound += pw;
            pw /= p;
        }
        Rat vB = valuation_or_throw(B[i]);
        if (!(vB >= bound)) {
            rep.bounds_ok = false;
            rep.failing_index = i;
        }
        if (!(vB >= 1)) rep.integral_ok = false;
    }
    if (!equal_at_precision(B[0], add(cL, y))) rep.b0_matches = false;

    // the expansion chain: f(S+y) = f(y)(1 + S A_i(S))^p + y^q S + B_i S^{q/p^i} + S^{1+q}
    DensePoly fshift = poly_taylor_shift(poly_embed(build_fqc(sc), L), y);
    TowerElem inv_pf = inv(mul_int(fy, Int(p)));
    for (unsigned i = 0; i <= sc.n; ++i) {
        // A_i(S) = -(p f(y))^{-1} sum_{t=1..i} B_t S^{q/p^t - 1}
        std::vector<TowerElem> ac(static_cast<size_t>(q) + 1, L->zero());
        long pt = 1;
        for (unsigned t = 1; t <= i; ++t) {
            pt *= p;
            ac[q / pt - 1] = add(ac[q / pt - 1], neg(mul(inv_pf, B[t])));
        }
        DensePoly Ai = poly_make(L, std::move(ac));
        DensePoly SAi = poly_mul(Ai, poly_x(L));
        DensePoly one_sai = poly_add(poly_one(L), SAi);
        DensePoly rhs = poly_scale(poly_pow(one_sai, p), fy);
        std::vector<TowerElem> extra(static_cast<size_t>(q) + 2, L->zero());
        long pi2 = 1;
        for (unsigned t = 0; t < i; ++t) pi2 *= p;
        extra[1] = add(extra[1], pow_i(y, q));
        extra[q / pi2] = add(extra[q / pi2], B[i]);
        extra[q + 1] = add(extra[q + 1], L->one());
        rhs = poly_add(rhs, poly_make(L, std::move(extra)));
        DensePoly D = poly_sub(fshift, rhs);
        if (!in_lambda_p_m(D, vlam_pq1, p, Rat(0))) {
            rep.congruences_ok = false;
            rep.failing_index = i;
        }
    }

    // auxiliary binomial congruence: (y + X)^q = (y^{q/p} + X^{q/p})^p mod p^2 m[T]
    {
        DensePoly lhs = poly_pow(poly_make(L, {y, L->one()}), q);
        std::vector<TowerElem> inner(static_cast<size_t>(q) / p + 1, L->zero());
        inner[0] = pow_i(y, q / p);
        inner[q / p] = L->one();
        DensePoly rhs = poly_pow(poly_make(L, std::move(inner)), p);
        DensePoly D = poly_sub(lhs, rhs);
        // threshold v > 2 = v(p^2), with the same T-grading
        rep.aux_binomial_ok = in_lambda_p_m(D, vlam_pq1, p, Rat(2) - rat(p, p - 1));
    }
    return rep;
}

StepDReport stepD_kummer_form(const GoodReductionScenario& sc, const SplittingField& sf) {
    StepDReport rep;
    const FieldPtr& L = sf.L;
    const unsigned p = sc.p;
    const long q = sc.q;
    const TowerElem& y = sf.y;
    rep.s = Int(q + 1) * (Int(p) * q * q - 1);

    TowerElem fy = poly_eval(poly_embed(build_fqc(sc), L), y);
    TowerElem cL = L->embed(sc.c);
    TowerElem bn = L->from_int(sc.b_n);
    TowerElem h = sub(div(pow_i(y, q * q / p), bn), cL);
    rep.h_val_pi = valuation_or_throw(h) * L->e();

    TowerElem lead = mul(mul_int(pow_i(y, q / p), Int(p)), h);
    rep.lead_val_pi = valuation_or_throw(lead) * L->e();

    TowerElem u;
    if (sc.n == 1) {
        u = sub(L->one(), mul(cL, y));
    } else {
        u = sub(L->one(), mul(cL, pow_i(y, q / p)));
        Int Eexp = 0, pk = 1;
        for (unsigned k = 0; k + 2 <= sc.n; ++k) {
            Eexp += pk;
            pk *= p;
            long e1q = (1 + q);
            long ppow = 1;
            for (unsigned t = 0; t < k; ++t) ppow *= p;
            TowerElem num = pow_i(y, e1q * ppow);
            TowerElem den = pow_i(L->from_int(-static_cast<long>(p)), to_long(Eexp));
            u = add(u, div(num, den));
        }
    }
    TowerElem r = sub(sub(mul(fy, pow_i(u, p)), L->one()), lead);
    auto vr = valuation_pi(r);
    Rat srat = Rat(rep.s);
    if (vr)
        rep.remainder_ok = *vr > srat;
    else
        rep.remainder_ok = Rat(r.prec) * L->e() > srat;

    KummerDatum d{p, to_long(rep.s), Int(L->e())};
    DifferentResult diff = different_from_kummer(d);
    rep.vM_different = diff.vL_pi;
    rep.top_break = break_from_different(rep.vM_different, p);
    return rep;
}

ReductionIdentity good_reduction_residue_check(const GoodReductionScenario& sc) {
    ReductionIdentity out;
    const FieldPtr& K = sc.K;
    const unsigned p = sc.p;
    const long q = sc.q;
    if (sc.wild) throw DomainError("the reduction identity applies to the trivial branch");
    const Fq& k = K->residue_field();
    TowerElem lam_p = pow_i(sc.lam, p);
    TowerElem inv_lam_p = inv(lam_p);

    // [(1 + lambda W)^p - 1] / lambda^p: coefficient of W^k is C(p,k) lambda^{k-p}
    bool ok = true;
    for (unsigned kk = 1; kk <= p; ++kk) {
        TowerElem coef = mul(mul_int(pow_i(sc.lam, kk), binom(p, kk)), inv_lam_p);
        Fq::Elem want = kk == p ? k.one() : (kk == 1 ? k.neg(k.one()) : k.zero());
        if (!k.equal(residue(coef), want)) ok = false;
    }
    // T^q coefficient: -c lambda^{pq/(1+q)} / lambda^p; its residue is -a
    TowerElem ctq = mul(mul(sc.c, pow_i(K->generator(), p * q)), inv_lam_p);
    out.a = k.neg(residue(neg(ctq)));
    // T^{q+1} coefficient: -lambda^p/lambda^p = -1 exactly
    out.ok = ok;
    return out;
}

// ------------------------------------------------------------------ genus 2

Genus2Scenario make_genus2(const FieldPtr& K, const TowerElem& b2, const TowerElem& b3,
                           const TowerElem& b4) {
    if (K->p() != 2) throw DomainError("the genus-2 machinery is specific to p = 2");
    for (const TowerElem* b : {&b2, &b3, &b4}) {
        if (b->exact_zero) continue;
        auto v = valuation(*b);
        if (v && *v < 0) throw DomainError("quintic coefficients must be integral");
    }
    Genus2Scenario sc;
    sc.K = K;
    sc.b2 = b2;
    sc.b3 = b3;
    sc.b4 = b4;
    std::vector<TowerElem> c(6, K->zero());
    c[0] = K->one();
    c[2] = b2;
    c[3] = b3;
    c[4] = b4;
    c[5] = K->one();
    sc.f = poly_make(K, std::move(c));
    return sc;
}

DensePoly build_Tf(const Genus2Scenario& sc) {
    const FieldPtr& K = sc.K;
    DensePoly s1 = poly_derivative(sc.f);
    // s2(Y) = b2 + 3 b3 Y + 6 b4 Y^2 + 10 Y^3
    DensePoly s2 = poly_make(K, {sc.b2, mul_int(sc.b3, Int(3)), mul_int(sc.b4, Int(6)),
                                 K->from_int(10)});
    DensePoly t = poly_sub(poly_mul(s1, s1),
                           poly_scale(poly_mul(sc.f, s2), K->from_int(4)));
    return t;
}

ClassifyResult classify_genus2(const Genus2Scenario& sc) {
    ClassifyResult res;
    const Fq& k = sc.K->residue_field();
    res.two_singularities = !k.is_zero(residue(sc.b3));
    TowerElem unit_expr = add(sc.K->one(), add(mul(sc.b3, sc.b2), mul(mul(sc.b3, sc.b3), sc.b4)));
    res.unit_condition = !k.is_zero(residue(unit_expr));

    if (res.two_singularities) {
        res.type = DegenType::I;
        res.evidence = "reduction has two singular points (residue of b3 nonzero)";
        if (!res.unit_condition)
            res.evidence += "; warning: the unit hypothesis 1 + b3 b2 + b3^2 b4 fails";
        return res;
    }

    DensePoly Tf = build_Tf(sc);
    NewtonPolygon P = newton_polygon(Tf);
    std::ostringstream ev;
    ev << "one singular point; T_f polygon: vanishing order " << P.vanishing_order << ", lengths";
    for (const auto& s : P.segments) ev << " " << s.length << "@" << rat_str(s.root_val_pi);
    if (P.vanishing_order == 0 && P.segments.size() == 1 && P.segments[0].length == 8 &&
        to_long(P.segments[0].root_val_pi.get_den()) == 8) {
        // candidate for a 4+4 cluster split: inspect the difference polygon at a root
        auto [L, y1] = extend_by_root(Tf, "y1");
        DensePoly TfL = poly_embed(Tf, L);
        DensePoly shifted = poly_taylor_shift(TfL, y1);
        std::vector<TowerElem> dc(shifted.c.begin() + 1, shifted.c.end());
        DensePoly Delta = poly_make(L, std::move(dc));
        NewtonPolygon PD = newton_polygon(Delta);
        ev << "; difference polygon lengths";
        for (const auto& s : PD.segments) ev << " " << s.length << "@" << rat_str(s.root_val_pi);
        if (PD.segments.size() == 2 && PD.segments[0].length == 3 && PD.segments[1].length == 4 &&
            PD.segments[0].root_val_pi > PD.segments[1].root_val_pi &&
            PD.segments[1].root_val_pi > 0) {
            res.type = DegenType::II;
            res.evidence = ev.str() + "; two 4-clusters at positive mutual distance";
            return res;
        }
    }
    res.type = DegenType::III;
    res.evidence = ev.str() + "; no balanced cluster split";
    return res;
}

}  // namespace ramlab
