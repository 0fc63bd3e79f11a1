#include "ramlab/pipeline.hpp"

#include <sstream>

#include "ramlab/filtration.hpp"
#include "ramlab/group.hpp"

namespace ramlab {

namespace {

std::string rs(const Rat& r) { return rat_str(r); }

std::string breaks_str(const FiltrationProfile& p) {
    std::ostringstream os;
    os << "|G0|=" << p.order0.get_str();
    for (const auto& s : p.segs)
        os << " (" << rs(s.upto) << "," << s.label << "," << s.order.get_str() << ")";
    return os.str();
}

long pow_long(long b, unsigned e) {
    long r = 1;
    for (unsigned i = 0; i < e; ++i) r *= b;
    return r;
}

// quartic-side analysis shared by the two halves of the type I pipeline
struct QuarticSide {
    RootFieldResult field;
    FiltrationProfile quartic;  // Gal(K(y)/K), lower
    long kummer_s = 0;
    long quad_break = 0;
    FiltrationProfile composed;  // Q8, lower
    Int sum_ig;
};

QuarticSide analyze_quartic_side(const DensePoly& T, const DensePoly& quintic,
                                 const std::string& name) {
    QuarticSide out;
    out.field = certified_root_field(poly_monicize(T), name);
    DensePoly prim = poly_embed(out.field.primitive, out.field.L);
    std::vector<TowerElem> conj;
    conj.reserve(out.field.roots.size());
    for (const auto& r : out.field.roots) conj.push_back(poly_eval(prim, r));
    auto filt = filtration_from_roots(out.field.L, conj, out.field.L->uniformizer(),
                                      "Gal(" + name + ")",
                                      [](const Int&) { return std::string("Q8/Z"); });
    out.quartic = filt.profile;
    out.quartic.label0 = "Q8/Z";
    out.sum_ig = filt.different_pi;

    TowerElem fy = poly_eval(poly_embed(quintic, out.field.L), out.field.roots[0]);
    auto nf = kummer_normal_form(fy);
    if (nf.trivial_range)
        throw Error("quadratic step " + name + " is not wildly ramified");
    out.kummer_s = nf.s;
    auto diff = different_from_kummer(KummerDatum{2, nf.s, Int(out.field.L->e())});
    out.quad_break = break_from_different(diff.vL_pi, 2);

    FiltrationProfile sub;
    sub.group_name = "Z(Q8)";
    sub.mode = FiltMode::lower;
    sub.order0 = 2;
    sub.full_order = 2;
    sub.label0 = "Z(Q8)";
    sub.segs = {{Rat(out.quad_break), "Z(Q8)", Int(2)}};
    ComposeGlue glue{"Q8", {{"Q8/Z", "Q8"}}};
    out.composed = compose_tower(sub, out.quartic, glue);
    out.composed.group_name = "Q8";
    return out;
}

// fixed dimensions for product labels "AxB" with A, B in {Q8, Z(Q8), 1}
FixedDimTable elliptic_product_dims(const FiltrationProfile& lower) {
    FixedDimTable dims;
    dims.genus = 2;
    auto put = [&](const std::string& label) {
        auto x = label.find('x');
        if (x == std::string::npos) throw DomainError("unexpected product label " + label);
        dims.dims[label] =
            fixed_dims_elliptic_q8(label.substr(0, x)) + fixed_dims_elliptic_q8(label.substr(x + 1));
    };
    put(lower.label0);
    for (const auto& s : lower.segs) put(s.label);
    return dims;
}

}  // namespace

Report with_precision_retry(long start, long e_deepest, const std::function<Report(long)>& fn) {
    long cap = std::max<long>(start, 16384 / std::max<long>(e_deepest, 1));
    for (long N = start;; N *= 2) {
        try {
            return fn(N);
        } catch (const PrecisionError& e) {
            if (2 * N > cap)
                throw PrecisionError(std::string(e.what()) +
                                     " (raise the starting precision or f_ur)");
        }
    }
}

// ----------------------------------------------------------- good reduction

Report run_good_reduction(unsigned p, unsigned n, const std::string& c_expr,
                          const RunOptions& opt) {
    long q = pow_long(p, n);
    long e_deep = (p - 1) * (q + 1) * q * q;
    return with_precision_retry(opt.precision, e_deep, [&](long N) {
        Report rep;
        rep.scenario = "good-reduction p=" + std::to_string(p) + " n=" + std::to_string(n) +
                       " c=" + c_expr;
        auto sc = make_good_reduction(p, n, c_expr, opt.f_ur, N);
        rep.notes.push_back("tower: " + sc.K->describe());

        {
            Int bp = 1;
            for (unsigned i = 0; i < p; ++i) bp *= sc.b_n;
            rep.add("good-reduction/base-compat", "b_n^p = a_n", bp.get_str(), sc.a_n.get_str());
        }

        if (!sc.wild) {
            rep.add("good-reduction/branch",
                    "v(c) >= v(lambda^{p/(1+q)}): the cover has good reduction over the base",
                    "trivial", "trivial");
            auto red = good_reduction_residue_check(sc);
            rep.add("good-reduction/reduction-identity",
                    "the substitution X = lambda^{p/(1+q)} T, Y = lambda W + 1 reduces the "
                    "cover to w^p - w = a t^q + t^{1+q}",
                    red.ok ? "match" : "mismatch", "match");
            rep.notes.push_back("reduction coefficient a = " +
                                sc.K->residue_field().to_string(red.a));
            return rep;
        }
        rep.add("good-reduction/branch", "v(c) < v(lambda^{p/(1+q)}): wild branch", "wild",
                "wild");
        if (!sc.hyp_cpc)
            rep.add_advisory("good-reduction/c-hypothesis",
                             "v(c^p - c) >= v(p) fails: filtration conclusions below are not "
                             "covered by the statement",
                             "violated");

        Rat rv = step1_root_valuation(sc);
        Rat va = 0;
        {
            Int an = sc.a_n < 0 ? -sc.a_n : sc.a_n;
            long v = 0;
            while (an % p == 0) {
                an /= p;
                ++v;
            }
            va = v;
        }
        rep.add("good-reduction/root-valuation",
                "all q^2 roots of the monodromy polynomial have v(y) = v(a_n c)/q^2 "
                "(Newton polygon cross-check)",
                rs(rv), rs((va + valuation_or_throw(sc.c)) / Rat(q * q)));

        SplittingField sf = build_splitting_field(sc);
        rep.add("good-reduction/irreducibility",
                "the monodromy polynomial is irreducible (slope denominator q^2 = " +
                    std::to_string(q * q) + ")",
                sf.cert.verdict == IrreducibilityCertificate::Verdict::irreducible ? "irreducible"
                                                                                   : "other",
                "irreducible");
        rep.notes.push_back(std::string("certificate: ") + sf.cert.detail +
                            (sf.via_charpoly
                                 ? " [via the characteristic polynomial of y^{q^2/p} - c b_n]"
                                 : " [direct]"));
        rep.add("good-reduction/splitting-degree",
                "[K(y):Q_p^ur-proxy] = (p-1)(q+1) q^2, totally ramified",
                std::to_string(sf.L->e()), std::to_string(e_deep));

        auto s5 = step5_root_separation(sc, sf);
        rep.add("good-reduction/derivative-valuation",
                "v(L'(y)) = (q^2 - 1) v(lambda^{p/(1+q)}) = v(a_n)", rs(s5.lc_prime_val),
                rs(s5.expected));
        rep.add("good-reduction/root-separation",
                "v(y_i - y_j) = v(lambda^{p/(1+q)}) for every pair",
                s5.all_pairs_equal ? rs(s5.pairwise_val) : "unequal",
                rs(valuation_or_throw(sc.lam_pq1)));

        auto s3 = verify_step3(sc, sf);
        bool step3_all = s3.bounds_ok && s3.integral_ok && s3.b0_matches && s3.closed_form_ok &&
                         s3.congruences_ok;
        rep.add("good-reduction/expansion-chain",
                "the recursive expansion of f(S+y): valuation bounds, integrality, closed "
                "form and the congruences mod lambda^p m[T]",
                step3_all ? "verified" : ("failed at index " + std::to_string(s3.failing_index)),
                "verified");
        rep.add("good-reduction/binomial-congruence",
                "(y + S)^q = (y^{q/p} + S^{q/p})^p mod p^2 m[T]",
                s3.aux_binomial_ok ? "verified" : "failed", "verified");

        auto sd = stepD_kummer_form(sc, sf);
        rep.add("good-reduction/kummer-exponent", "s = (q+1)(p q^2 - 1)", sd.s.get_str(),
                Int(Int(q + 1) * (Int(p) * q * q - 1)).get_str());
        rep.add("good-reduction/kummer-h", "v_L(y^{q^2/p}/b_n - c) = q^2 - 1", rs(sd.h_val_pi),
                std::to_string(q * q - 1));
        rep.add("good-reduction/kummer-lead", "v_L(p y^{q/p} (y^{q^2/p}/b_n - c)) = s",
                rs(sd.lead_val_pi), sd.s.get_str());
        rep.add("good-reduction/kummer-remainder",
                "f(y) u^p = 1 + p y^{q/p} (y^{q^2/p}/b_n - c) + r with v_L(r) > s",
                sd.remainder_ok ? "verified" : "failed", "verified");
        rep.add("good-reduction/different", "v_M(D_{M/L}) = (p-1)(q+2)",
                sd.vM_different.get_str(), std::to_string((p - 1) * (q + 2)));
        rep.add("good-reduction/top-break",
                "the degree-p step has its single break at q + 1", std::to_string(sd.top_break),
                std::to_string(q + 1));

        // quotient filtration of L/K from root permutations
        auto filt = filtration_from_roots(sf.L, sf.gen_conjugates, sf.z, "Gal(L/K)",
                                          [](const Int&) { return std::string("G/Z"); });
        FiltrationProfile quot = filt.profile;
        quot.label0 = "G/Z";
        rep.add("good-reduction/quotient-filtration",
                "Gal(L/K) has the single break 1 (all i_G = 2)", breaks_str(quot),
                "|G0|=" + Int(q * q).get_str() + " (1,G/Z," + Int(q * q).get_str() + ")");
        rep.notes.push_back("sum of i_G over Gal(L/K) = " + filt.different_pi.get_str() +
                            " pi-units");

        FiltrationProfile sub;
        sub.group_name = "Z(G)";
        sub.mode = FiltMode::lower;
        sub.order0 = p;
        sub.full_order = p;
        sub.label0 = "Z(G)";
        sub.segs = {{Rat(sd.top_break), "Z(G)", Int(p)}};
        ComposeGlue glue{"G", {{"G/Z", "G"}}};
        FiltrationProfile G = compose_tower(sub, quot, glue);
        {
            std::ostringstream expect;
            expect << "|G0|=" << Int(p) * q * q << " (1,G," << Int(p) * q * q << ") (" << q + 1
                   << ",Z(G)," << p << ")";
            rep.add("good-reduction/filtration",
                    "lower filtration: G = G_0 = G_1, then Z(G) = G_2 = ... = G_{1+q}",
                    breaks_str(G), expect.str());
        }

        FixedDimTable dims = fixed_dims_good_reduction(p, n);
        auto cond = swan_conductor(G, dims);
        rep.add("good-reduction/conductor-epsilon", "epsilon = 2g = q(p-1)",
                std::to_string(cond.epsilon), std::to_string(q * (p - 1)));
        rep.add("good-reduction/conductor-swan", "sw = (q+1)(p-1)", rs(cond.swan),
                std::to_string((q + 1) * (p - 1)));
        rep.add("good-reduction/conductor-exponent", "f = (2q+1)(p-1)", std::to_string(cond.f),
                std::to_string((2 * q + 1) * (p - 1)));

        dims.dims["G:base"] = 0;
        auto over = swan_after_base_change(G, (p - 1) * (q + 1), p, "G:base", dims);
        rep.add("good-reduction/swan-over-base",
                "sw over the maximal unramified base equals 1 (tame degree (p-1)(q+1))",
                rs(over.swan), "1");
        return rep;
    });
}

// ------------------------------------------------------------------ genus 2

namespace {

Report run_genus2_impl(const TowerSpec& tower, const std::string& b2s, const std::string& b3s,
                       const std::string& b4s, const RunOptions& opt, unsigned f_ur, long N);

Report run_genus2_at(const TowerSpec& tower, const std::string& b2s, const std::string& b3s,
                     const std::string& b4s, const RunOptions& opt) {
    return with_precision_retry(opt.precision, 64, [&](long N) {
        return run_genus2_impl(tower, b2s, b3s, b4s, opt, opt.f_ur, N);
    });
}

Report run_genus2_impl(const TowerSpec& tower, const std::string& b2s, const std::string& b3s,
                       const std::string& b4s, const RunOptions& opt, unsigned f_ur, long N) {
    Report rep;
    rep.scenario = "genus2 b2=" + b2s + " b3=" + b3s + " b4=" + b4s;
    TowerSpec ts = tower;
    ts.f_ur = f_ur;
    ts.precision = N;
    FieldPtr K = build_tower(ts);
    rep.notes.push_back("tower: " + K->describe());
    auto sc = make_genus2(K, parse_element(K, b2s), parse_element(K, b3s), parse_element(K, b4s));

    auto cls = classify_genus2(sc);
    std::string tname = cls.type == DegenType::I ? "I" : cls.type == DegenType::II ? "II" : "III";
    rep.add_advisory("genus2/classification", "degeneration type of the stable reduction", tname);
    rep.notes.push_back("evidence: " + cls.evidence);

    DensePoly Tf = build_Tf(sc);

    if (cls.type == DegenType::I) {
        rep.add("genus2/unit-condition", "1 + b3 b2 + b3^2 b4 is a unit",
                cls.unit_condition ? "unit" : "not a unit", "unit");

        auto factors = hensel_split(Tf);
        DensePoly T1, T2;
        for (auto& f : factors) {
            NewtonPolygon P = newton_polygon(f);
            if (P.segments.size() == 1 && P.segments[0].root_val_pi > 0)
                T1 = f;
            else
                T2 = f;
        }
        {
            std::ostringstream degs;
            for (auto& f : factors) degs << f.degree() << " ";
            rep.add("genus2/tf-split", "T_f splits into two quartics over K", degs.str(), "4 4 ");
        }
        const Fq& k = K->residue_field();
        {
            DensePoly t2m = poly_monicize(T2);
            std::vector<Fq::Elem> red;
            for (auto& c : t2m.c) red.push_back(residue(c));
            FqPoly rho = fqp_make(k, red);
            Fq::Elem b3bar = residue(sc.b3);
            FqPoly expect;
            expect.c.assign(5, k.zero());
            expect.c[0] = k.mul(b3bar, b3bar);
            expect.c[4] = k.one();
            rep.add("genus2/tf-reductions", "the factor reductions are Y^4 and Y^4 + b3bar^2",
                    fqp_equal(k, rho, expect) ? "match" : fqp_to_string(k, rho), "match");
        }
        {
            TowerElem disc =
                mul(discriminant_monic(poly_monicize(Tf)), pow_i(Tf.lc(), 2 * Tf.degree() - 2));
            TowerElem scaled = div(disc, pow_i(K->p_elem(), 16));
            rep.add("genus2/disc-valuation", "v(2^{-16} disc T_f) = 0",
                    rs(valuation_or_throw(scaled)), "0");
            Fq::Elem b3bar = residue(sc.b3);
            Fq::Elem unit =
                residue(add(K->one(), add(mul(sc.b3, sc.b2), mul(mul(sc.b3, sc.b3), sc.b4))));
            Fq::Elem expect = k.mul(k.pow(b3bar, 8), k.pow(unit, 4));
            rep.add("genus2/disc-residue",
                    "residue of 2^{-16} disc T_f equals b3bar^8 (1 + b3 b2 + b3^2 b4)^4",
                    k.to_string(residue(scaled)), k.to_string(expect));
        }

        QuarticSide s1 = analyze_quartic_side(T1, sc.f, "y1");
        QuarticSide s2 = analyze_quartic_side(T2, sc.f, "y5");
        rep.add("genus2/t1-irreducible",
                "the positive-slope quartic is irreducible over K (certified root field)",
                "irreducible", "irreducible");
        rep.add("genus2/t2-irreducible",
                "the unit-root quartic is irreducible over K (certified root field, " +
                    std::to_string(s2.field.refinements) + " refinements)",
                "irreducible", "irreducible");
        rep.add("genus2/quartic-filtrations", "Gal(K(y)/K) breaks for the two quartics",
                rs(s1.quartic.segs.back().upto) + " and " + rs(s2.quartic.segs.back().upto),
                "1 and 5");
        rep.add("genus2/quadratic-breaks",
                "breaks of the quadratic steps from the Kummer normal form of f(y)",
                std::to_string(s1.quad_break) + " and " + std::to_string(s2.quad_break),
                "3 and 69");
        rep.add("genus2/q8-filtrations", "composed lower filtrations of the two Q8 halves",
                breaks_str(s1.composed) + " | " + breaks_str(s2.composed),
                "|G0|=8 (1,Q8,8) (3,Z(Q8),2) | |G0|=8 (5,Q8,8) (69,Z(Q8),2)");

        FiltrationProfile U1 = to_upper(s1.composed), U2 = to_upper(s2.composed);
        {
            std::ostringstream u;
            for (auto& s : U1.segs) u << rs(s.upto) << " ";
            u << "| ";
            for (auto& s : U2.segs) u << rs(s.upto) << " ";
            rep.add("genus2/upper-breaks", "upper breaks of the two halves", u.str(),
                    "1 3/2 | 5 21 ");
        }
        bool adv = false;
        U1.group_name = "1G";
        U2.group_name = "2G";
        U1.label0 = "Q8";
        U2.label0 = "Q8";
        FiltrationProfile PU = product_arith_disjoint(U1, U2, &adv);
        rep.add_advisory("genus2/arith-disjoint",
                         "sufficient upper-break disjointness criterion for the product rule",
                         adv ? "disjoint" : "overlapping");
        FiltrationProfile PL = to_lower(PU);
        PL.group_name = "Q8xQ8";
        rep.add("genus2/product-filtration", "lower filtration of the product group",
                breaks_str(PL),
                "|G0|=64 (1,Q8xQ8,64) (3,Z(Q8)xQ8,16) (31,1xQ8,8) (543,1xZ(Q8),2)");

        auto cond = swan_conductor(PL, elliptic_product_dims(PL));
        rep.add("genus2/swan", "Swan conductor of the Jacobian", rs(cond.swan), "45");
        {
            std::ostringstream lg;
            for (auto& l : cond.ledger) lg << rs(l.contribution) << " ";
            rep.add("genus2/swan-ledger", "per-range Swan contributions", lg.str(), "4 2 7 32 ");
        }

        {
            // wild monodromy group: the sixteen realized translation classes
            // generate Q8 x Q8 together with its Frattini subgroup
            FiniteGroup Q = quaternion_group();
            FiniteGroup G = direct_product(Q, Q);
            std::vector<int> images;
            for (int a = 0; a < Q.n; ++a)
                for (int b = 0; b < Q.n; ++b) images.push_back(a * Q.n + b);
            bool full = frattini_closure_surjective(G, images);
            rep.add("genus2/monodromy-order",
                    "the realized translation classes generate Q8 x Q8 modulo Frattini",
                    full ? "64" : "smaller", "64");
        }
        {
            DensePoly T2L = poly_embed(poly_monicize(T2), s1.field.L);
            auto rr = roots_in_field(T2L);
            std::ostringstream shape;
            shape << "linears " << s1.field.roots.size() << ", quartic roots " << rr.roots.size();
            rep.add("genus2/shape-over-first-field",
                    "over K(y1): four linear factors and a rootless quartic", shape.str(),
                    "linears 4, quartic roots 0");
            rep.add_advisory(
                "genus2/t2-over-splitting-field",
                "the unit-root quartic stays irreducible over K(y1): verified at the residue "
                "proxy degree " + std::to_string(f_ur) + " (root search + slope data)",
                rr.roots.empty() && !rr.inconclusive ? "no roots found" : "roots appeared");
        }
        if (opt.stability_recheck) {
            RunOptions o2 = opt;
            o2.stability_recheck = false;
            Report again = run_genus2_impl(tower, b2s, b3s, b4s, o2, 2 * f_ur, N);
            rep.add("genus2/stability",
                    "structural conclusions re-derived at residue degree " +
                        std::to_string(2 * f_ur),
                    again.ok() ? "stable" : "changed", "stable");
        }
        return rep;
    }

    if (cls.type == DegenType::II) {
        auto cert = certify_irreducible(Tf);
        NewtonPolygon P = newton_polygon(Tf);
        rep.add("genus2/tf-irreducible", "T_f is irreducible over K by its slope denominator 8",
                cert.verdict == IrreducibilityCertificate::Verdict::irreducible &&
                        cert.reason == IrreducibilityCertificate::Reason::single_slope_denominator
                    ? "irreducible"
                    : "other",
                "irreducible");
        rep.add("genus2/tf-root-valuation", "all 8 roots of T_f have v = (7/24) v(2)",
                rs(P.segments[0].root_val_pi / K->e()), rs(rat(7, 24)));

        auto [L, y1] = extend_by_root(Tf, "y1");
        DensePoly sh = poly_taylor_shift(poly_embed(Tf, L), y1);
        std::vector<TowerElem> dc(sh.c.begin() + 1, sh.c.end());
        DensePoly Delta = poly_make(L, std::move(dc));
        NewtonPolygon PD = newton_polygon(Delta);
        {
            std::ostringstream os;
            for (auto& s : PD.segments) os << s.length << "@" << rs(s.root_val_pi / L->e()) << " ";
            rep.add("genus2/difference-clusters",
                    "the difference polygon splits 3 roots at v(rho) = (4/9) v(2) and 4 at v(2)/3",
                    os.str(), "3@4/9 4@1/3 ");
        }
        {
            FiniteGroup S = q8q8_swap();
            std::vector<int> images;
            for (int a = 0; a < 8; ++a)
                for (int b = 0; b < 8; ++b) images.push_back((a * 8 + b) * 2);
            images.push_back(1);  // the factor swap realized by cross-cluster transitivity
            bool full = frattini_closure_surjective(S, images);
            rep.add("genus2/monodromy-order",
                    "translations plus the cluster swap generate (Q8xQ8):2 modulo Frattini",
                    full ? "128" : "smaller", "128");
        }
        if (opt.stability_recheck) {
            RunOptions o2 = opt;
            o2.stability_recheck = false;
            Report again = run_genus2_impl(tower, b2s, b3s, b4s, o2, 2 * f_ur, N);
            rep.add("genus2/stability",
                    "structural conclusions re-derived at residue degree " +
                        std::to_string(2 * f_ur),
                    again.ok() ? "stable" : "changed", "stable");
        }
        return rep;
    }

    rep.add("genus2/family-form",
            "b2 and b3 reduce to 0: the quintic is 1 + c X^4 + X^5 with c = b4",
            (K->residue_field().is_zero(residue(sc.b2)) &&
             K->residue_field().is_zero(residue(sc.b3)))
                ? "yes"
                : "no",
            "yes");
    rep.notes.push_back("the wild-monodromy data of this member is computed by the "
                        "good-reduction analysis at p = 2, n = 2");
    return rep;
}

}  // namespace

Report run_genus2(const TowerSpec& tower, const std::string& b2, const std::string& b3,
                  const std::string& b4, const RunOptions& opt) {
    return run_genus2_at(tower, b2, b3, b4, opt);
}

Report run_genus2_preset(const std::string& preset, const RunOptions& opt) {
    TowerSpec t;
    t.p = 2;
    t.f_ur = opt.f_ur;
    t.precision = opt.precision;
    if (preset == "type-I-example") {
        t.steps = {RadicalStepSpec{15, "p", "pi15"}};
        return run_genus2(t, "2^(3/5)", "1", "2^(2/5)", opt);
    }
    if (preset == "type-II-example") {
        t.steps = {RadicalStepSpec{9, "p", "a"}};
        return run_genus2(t, "a^3", "a^6", "0", opt);
    }
    if (preset == "type-III-example") {
        t.steps = {RadicalStepSpec{5, "-2", "lam15"}};
        return run_genus2(t, "0", "0", "1", opt);
    }
    throw DomainError("unknown preset '" + preset + "'");
}

Report run_group_info(const std::string& name) {
    Report rep;
    rep.scenario = "group " + name;
    FiniteGroup G = make_named(name);
    rep.add_advisory("group/order", "group order", std::to_string(G.n));
    rep.add_advisory("group/center", "center order", std::to_string(center(G).size()));
    rep.add_advisory("group/derived", "derived subgroup order",
                     std::to_string(derived_subgroup(G).size()));
    unsigned p = pgroup_prime(G);
    if (p) {
        rep.add_advisory("group/frattini", "Frattini subgroup order",
                         std::to_string(frattini_subgroup(G).size()));
        rep.add_advisory("group/extraspecial", "extra-special",
                         is_extraspecial(G) ? "yes" : "no");
    }
    rep.add_advisory("group/abelian", "abelian", is_abelian(G) ? "yes" : "no");
    return rep;
}

FiltrationProfile preset_profile(const std::string& name) {
    auto q8 = [](long b1, long b2, const std::string& nm) {
        FiltrationProfile p;
        p.group_name = nm;
        p.mode = FiltMode::lower;
        p.order0 = 8;
        p.full_order = 8;
        p.label0 = "Q8";
        p.segs = {{Rat(b1), "Q8", Int(8)}, {Rat(b2), "Z(Q8)", Int(2)}};
        p.validate();
        return p;
    };
    if (name == "q8-1-3") return q8(1, 3, "1G");
    if (name == "q8-5-69") return q8(5, 69, "2G");
    if (name.rfind("good-", 0) == 0) {
        auto rest = name.substr(5);
        auto dash = rest.find('-');
        long p = std::stol(rest.substr(0, dash));
        long n = std::stol(rest.substr(dash + 1));
        long q = 1;
        for (long i = 0; i < n; ++i) q *= p;
        FiltrationProfile g;
        g.group_name = "G(pq^2)";
        g.mode = FiltMode::lower;
        g.order0 = Int(p) * q * q;
        g.full_order = g.order0;
        g.label0 = "G";
        g.segs = {{Rat(1), "G", g.order0}, {Rat(q + 1), "Z(G)", Int(p)}};
        g.validate();
        return g;
    }
    throw DomainError("unknown profile preset '" + name + "'");
}

// -------------------------------------------------------------------- JSON

nlohmann::ordered_json profile_to_json(const FiltrationProfile& p) {
    nlohmann::ordered_json j;
    j["group"] = p.group_name;
    j["mode"] = p.mode == FiltMode::lower ? "lower" : "upper";
    j["order0"] = p.order0.get_str();
    j["label0"] = p.label0;
    j["tame_index"] = Int(p.full_order / p.order0).get_str();
    j["breaks"] = nlohmann::ordered_json::array();
    for (const auto& s : p.segs)
        j["breaks"].push_back({rs(s.upto), s.label, s.order.get_str()});
    return j;
}

FiltrationProfile profile_from_json(const nlohmann::json& j) {
    FiltrationProfile p;
    p.group_name = j.value("group", "G");
    p.mode = j.value("mode", "lower") == "upper" ? FiltMode::upper : FiltMode::lower;
    p.order0 = Int(j.at("order0").get<std::string>());
    p.label0 = j.value("label0", p.group_name);
    Int tame = Int(j.value("tame_index", std::string("1")));
    p.full_order = p.order0 * tame;
    for (const auto& b : j.at("breaks")) {
        FiltSeg s;
        std::string u = b.at(0).get<std::string>();
        auto slash = u.find('/');
        if (slash == std::string::npos)
            s.upto = Rat(Int(u));
        else
            s.upto = rat(Int(u.substr(0, slash)), Int(u.substr(slash + 1)));
        s.label = b.at(1).get<std::string>();
        s.order = Int(b.at(2).get<std::string>());
        p.segs.push_back(s);
    }
    p.validate();
    return p;
}

nlohmann::ordered_json conductor_to_json(const ConductorReport& r) {
    nlohmann::ordered_json j;
    j["epsilon"] = r.epsilon;
    j["swan"] = rs(r.swan);
    j["f"] = r.f;
    j["ledger"] = nlohmann::ordered_json::array();
    for (const auto& l : r.ledger) {
        nlohmann::ordered_json e;
        e["range"] = {rs(l.from), rs(l.to)};
        e["subgroup"] = l.label;
        e["order"] = l.order.get_str();
        e["dim_fixed"] = l.dim_fixed;
        e["contribution"] = rs(l.contribution);
        j["ledger"].push_back(e);
    }
    return j;
}

nlohmann::ordered_json herbrand_to_json(const HerbrandFn& f) {
    nlohmann::ordered_json j;
    j["vertices"] = nlohmann::ordered_json::array();
    for (const auto& [x, y] : f.vertices) j["vertices"].push_back({rs(x), rs(y)});
    j["final_slope"] = rs(f.final_slope);
    return j;
}

FixedDimTable dims_from_json(const nlohmann::json& j) {
    FixedDimTable t;
    t.genus = j.at("genus").get<long>();
    if (j.contains("ell")) t.ell = j.at("ell").get<unsigned>();
    for (const auto& [key, val] : j.at("dims").items()) t.dims[key] = val.get<long>();
    return t;
}

Report run_config(const nlohmann::json& config) {
    std::string kind = config.at("kind").get<std::string>();
    RunOptions opt;
    opt.f_ur = config.value("f_ur", 8u);
    opt.precision = config.value("precision", 64L);
    opt.stability_recheck = config.value("stability_recheck", false);
    if (kind == "good-reduction") {
        return run_good_reduction(config.at("p").get<unsigned>(), config.at("n").get<unsigned>(),
                                  config.value("c", std::string("1")), opt);
    }
    if (kind == "genus2") {
        if (config.contains("preset"))
            return run_genus2_preset(config.at("preset").get<std::string>(), opt);
        TowerSpec t;
        const auto& tw = config.at("tower");
        t.p = tw.at("p").get<unsigned>();
        t.f_ur = tw.value("f_ur", opt.f_ur);
        t.precision = opt.precision;
        for (const auto& st : tw.at("steps")) {
            if (st.contains("radical")) {
                RadicalStepSpec r;
                r.m = st.at("radical").at("m").get<long>();
                r.radicand = st.at("radical").at("radicand").get<std::string>();
                r.name = st.at("radical").value("name", std::string(""));
                t.steps.push_back(r);
            } else {
                EisensteinStepSpec e;
                for (const auto& c : st.at("eisenstein").at("coeffs"))
                    e.coeffs.push_back(c.get<std::string>());
                e.name = st.at("eisenstein").value("name", std::string(""));
                t.steps.push_back(e);
            }
        }
        const auto& cf = config.at("coeffs");
        return run_genus2(t, cf.at("b2").get<std::string>(), cf.at("b3").get<std::string>(),
                          cf.at("b4").get<std::string>(), opt);
    }
    if (kind == "group") return run_group_info(config.at("name").get<std::string>());
    throw DomainError("unknown config kind '" + kind + "'");
}

}  // namespace ramlab
