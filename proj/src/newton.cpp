#include "ramlab/newton.hpp"

#include <algorithm>
#include <sstream>

namespace ramlab {

namespace {

long rat_to_long_exact(const Rat& r) {
    if (!rat_is_int(r)) throw DomainError("expected an integer, got " + rat_str(r));
    return to_long(r.get_num());
}

// residue image of every coefficient (undefined-at-precision counts as 0)
FqPoly reduction_poly(const DensePoly& f) {
    const Fq& k = f.F->residue_field();
    std::vector<Fq::Elem> c;
    c.reserve(f.c.size());
    for (const auto& coeff : f.c) c.push_back(residue(coeff));
    return fqp_make(k, std::move(c));
}

DensePoly lift_poly(const FieldPtr& F, const FqPoly& a) {
    std::vector<TowerElem> c;
    c.reserve(a.c.size());
    for (const auto& e : a.c) c.push_back(F->from_residue(e));
    return poly_make(F, std::move(c));
}

}  // namespace

// ------------------------------------------------------------ newton_polygon

NewtonPolygon newton_polygon(const DensePoly& f) {
    if (f.is_zero()) throw DomainError("Newton polygon of the zero polynomial");
    const FieldPtr& F = f.F;
    const long deg = f.degree();

    struct Pt {
        long i;
        long v;  // pi-units
    };
    std::vector<Pt> pts;
    std::vector<std::pair<long, Rat>> floors;  // undefined coefficients: (i, precision floor)
    long k0 = -1;                              // first non-exact-zero index
    for (long i = 0; i <= deg; ++i) {
        const TowerElem& c = f.c[i];
        if (c.exact_zero) continue;
        if (k0 < 0) k0 = i;
        auto v = valuation_pi(c);
        if (v)
            pts.push_back({i, rat_to_long_exact(*v)});
        else
            floors.push_back({i, c.prec * F->e()});
    }
    if (pts.empty()) throw PrecisionError("no coefficient has a determined valuation");
    if (!valuation(f.lc())) throw PrecisionError("leading coefficient indistinguishable from 0");
    const long first_defined = pts.front().i;
    for (const auto& [i, fl] : floors)
        if (i < first_defined)
            throw PrecisionError("coefficient " + std::to_string(i) +
                                 " below the first determined one is undecided");

    // lower hull; collinear middle points are dropped, merging their segments
    std::vector<Pt> hull;
    for (const Pt& pt : pts) {
        while (hull.size() >= 2) {
            const Pt& a = hull[hull.size() - 2];
            const Pt& b = hull[hull.size() - 1];
            if (Int(b.v - a.v) * Int(pt.i - b.i) >= Int(pt.v - b.v) * Int(b.i - a.i))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }

    auto hull_value = [&](long i) -> Rat {
        for (size_t s = 0; s + 1 < hull.size(); ++s)
            if (i >= hull[s].i && i <= hull[s + 1].i)
                return Rat(hull[s].v) +
                       rat((i - hull[s].i) * (hull[s + 1].v - hull[s].v), hull[s + 1].i - hull[s].i);
        return Rat(hull.back().v);
    };
    for (const auto& [i, fl] : floors)
        if (fl <= hull_value(i))
            throw PrecisionError("coefficient " + std::to_string(i) +
                                 " is undecided at the polygon hull");

    NewtonPolygon P;
    P.vanishing_order = k0;
    for (const Pt& pt : hull) P.vertices.push_back({pt.i, Rat(pt.v)});
    const Fq& k = F->residue_field();
    for (size_t s = 0; s + 1 < hull.size(); ++s) {
        const Pt& A = hull[s];
        const Pt& B = hull[s + 1];
        PolygonSegment seg;
        seg.length = B.i - A.i;
        seg.root_val_pi = rat(A.v - B.v, B.i - A.i);
        long b = to_long(seg.root_val_pi.get_den());
        long a = to_long(seg.root_val_pi.get_num());
        // residual coefficients must be normalized by consistent powers of a
        // single element (monomials of different exponents differ by units),
        // here mu(a)^t * mu(-v_left)
        TowerElem mu_a = F->monomial(a);
        TowerElem mu_head = F->monomial(-A.v);
        TowerElem pw = F->one();
        std::vector<Fq::Elem> rc;
        for (long t = 0; t * b <= seg.length; ++t) {
            long idx = A.i + t * b;
            long line = A.v - t * a;
            const TowerElem& cc = f.c[idx];
            if (t) pw = mul(pw, mu_a);
            if (cc.exact_zero) {
                rc.push_back(k.zero());
                continue;
            }
            auto v = valuation_pi(cc);
            if (!v || rat_to_long_exact(*v) > line) {
                rc.push_back(k.zero());
                continue;
            }
            rc.push_back(residue(mul(cc, mul(pw, mu_head))));
        }
        seg.residual = fqp_make(k, std::move(rc));
        P.segments.push_back(std::move(seg));
    }
    if (hull.size() == 1 && deg != k0)
        throw PrecisionError("polygon degenerates to a point below the degree");
    return P;
}

// ------------------------------------------------------- irreducibility

IrreducibilityCertificate certify_irreducible(const DensePoly& f) {
    IrreducibilityCertificate cert;
    const long deg = f.degree();
    if (deg <= 0) {
        cert.detail = "constant polynomial";
        return cert;
    }
    if (deg == 1) {
        cert.verdict = IrreducibilityCertificate::Verdict::irreducible;
        cert.reason = IrreducibilityCertificate::Reason::single_slope_denominator;
        cert.detail = "degree 1";
        return cert;
    }
    NewtonPolygon P = newton_polygon(f);
    if (P.vanishing_order > 0) {
        cert.verdict = IrreducibilityCertificate::Verdict::reducible;
        cert.reason = IrreducibilityCertificate::Reason::root_witness;
        cert.detail = "root 0 with multiplicity " + std::to_string(P.vanishing_order);
        return cert;
    }
    if (P.segments.size() >= 2) {
        cert.verdict = IrreducibilityCertificate::Verdict::reducible;
        cert.reason = IrreducibilityCertificate::Reason::hensel_split;
        std::ostringstream os;
        os << "polygon splits into lengths";
        for (const auto& s : P.segments) os << " " << s.length;
        cert.detail = os.str();
        return cert;
    }
    const PolygonSegment& seg = P.segments.front();
    long b = to_long(seg.root_val_pi.get_den());
    if (b == deg) {
        cert.verdict = IrreducibilityCertificate::Verdict::irreducible;
        cert.reason = IrreducibilityCertificate::Reason::single_slope_denominator;
        cert.detail = "single segment, root valuation " + rat_str(seg.root_val_pi) +
                      " pi-units with denominator " + std::to_string(b) + " = degree";
        return cert;
    }
    const Fq& k = f.F->residue_field();
    const FqPoly& rho = seg.residual;
    if (rho.degree() * b == deg && fqp_is_irreducible(k, rho)) {
        cert.verdict = IrreducibilityCertificate::Verdict::irreducible;
        cert.reason = IrreducibilityCertificate::Reason::residual_irreducible;
        cert.proxy_grade = rho.degree() > 1;
        cert.detail = "residual of degree " + std::to_string(rho.degree()) +
                      " irreducible over F_" + std::to_string(k.p()) + "^" +
                      std::to_string(k.f()) + ", times slope denominator " + std::to_string(b);
        return cert;
    }
    auto parts = fqp_factor(k, rho);
    if (parts.size() >= 2) {
        cert.verdict = IrreducibilityCertificate::Verdict::reducible;
        cert.reason = IrreducibilityCertificate::Reason::hensel_split;
        cert.detail = "residual splits into " + std::to_string(parts.size()) + " coprime parts";
        return cert;
    }
    cert.detail = "single segment with a repeated residual factor";
    return cert;
}

// ------------------------------------------------------------ Hensel lifting

std::pair<DensePoly, DensePoly> hensel_lift_pair(const DensePoly& f, const FqPoly& gbar,
                                                 const FqPoly& hbar) {
    const FieldPtr& F = f.F;
    const Fq& k = F->residue_field();
    if (gbar.degree() < 1) throw DomainError("hensel_lift_pair: gbar must be non-constant");
    if (!k.equal(gbar.c.back(), k.one())) throw DomainError("hensel_lift_pair: gbar must be monic");
    {
        FqPoly prod = fqp_mul(k, gbar, hbar);
        if (!fqp_equal(k, prod, reduction_poly(f)))
            throw DomainError("hensel_lift_pair: residue factorization does not match");
    }
    const long dg = gbar.degree();
    const long dh = f.degree() - dg;

    FqPoly gb, sb, tb;
    fqp_xgcd(k, gbar, hbar, gb, sb, tb);
    if (gb.degree() != 0) throw DomainError("hensel_lift_pair: factors are not coprime");
    DensePoly g = lift_poly(F, gbar);
    DensePoly h = lift_poly(F, hbar);
    DensePoly s = lift_poly(F, sb);
    DensePoly t = lift_poly(F, tb);

    auto truncate_deg = [](DensePoly& a, long dmax) {
        if (dmax < 0) dmax = 0;
        if (a.degree() > dmax) a.c.resize(static_cast<size_t>(dmax) + 1);
        while (!a.c.empty() && a.c.back().exact_zero) a.c.pop_back();
    };

    std::optional<Rat> last_gain;
    int stalls = 0;
    for (int iter = 0; iter < 64; ++iter) {
        DensePoly e = poly_sub(f, poly_mul(g, h));
        bool done = true;
        for (const auto& c : e.c)
            if (!c.exact_zero && !is_zero_at_precision(c)) done = false;
        if (done) break;
        Rat ev = poly_min_val_pi(e);
        if (last_gain && ev <= *last_gain) {
            if (++stalls >= 2)
                throw PrecisionError("factor lifting stalled at pi-valuation " + rat_str(ev));
        } else {
            stalls = 0;
        }
        last_gain = ev;

        // from s*g + t*h = 1: g*(s e + q h) + h*((t e) rem g) = e
        DensePoly q, r;
        poly_divrem_monic(poly_mul(t, e), g, q, r);
        g = poly_add(g, r);
        g.c.resize(static_cast<size_t>(dg) + 1, F->zero());
        g.c[dg] = F->one();
        h = poly_add(h, poly_add(poly_mul(s, e), poly_mul(q, h)));
        truncate_deg(h, dh);

        DensePoly b = poly_sub(poly_add(poly_mul(s, g), poly_mul(t, h)), poly_one(F));
        DensePoly q2, r2;
        poly_divrem_monic(poly_mul(t, b), g, q2, r2);
        t = poly_sub(t, r2);
        truncate_deg(t, dg - 1);
        s = poly_sub(s, poly_add(poly_mul(s, b), poly_mul(q2, h)));
        truncate_deg(s, dh - 1);
    }
    return {g, h};
}

namespace {

DensePoly x_power(const FieldPtr& F, long kk) {
    std::vector<TowerElem> c(static_cast<size_t>(kk) + 1, F->zero());
    c[kk] = F->one();
    return poly_make(F, std::move(c));
}

void hensel_split_rec(const DensePoly& f, std::vector<DensePoly>& out);

// lift the split gbar*hbar of the scaled polynomial g (X = mu Z), pull the
// monic factor back and divide f by it
void split_and_recurse(const DensePoly& f, const DensePoly& g, const FqPoly& gbar,
                       const FqPoly& hbar, const TowerElem& mu, std::vector<DensePoly>& out) {
    const FieldPtr& F = f.F;
    auto [G, H] = hensel_lift_pair(g, gbar, hbar);
    const long dg = G.degree();
    DensePoly f_low;
    f_low.F = F;
    f_low.c.reserve(dg + 1);
    for (long j = 0; j <= dg; ++j) f_low.c.push_back(mul(G.c[j], pow_i(mu, dg - j)));
    f_low.c[dg] = F->one();
    DensePoly q, r;
    poly_divrem_monic(f, f_low, q, r);
    for (const auto& c : r.c)
        if (!c.exact_zero && !is_zero_at_precision(c))
            throw PrecisionError("factor complement has a nonzero remainder");
    hensel_split_rec(f_low, out);
    hensel_split_rec(q, out);
}

void hensel_split_rec(const DensePoly& f, std::vector<DensePoly>& out) {
    const FieldPtr& F = f.F;
    if (f.degree() <= 1) {
        out.push_back(f);
        return;
    }
    NewtonPolygon P = newton_polygon(f);
    if (P.vanishing_order > 0) {
        out.push_back(x_power(F, P.vanishing_order));
        DensePoly u;
        u.F = F;
        u.c.assign(f.c.begin() + P.vanishing_order, f.c.end());
        hensel_split_rec(u, out);
        return;
    }
    if (P.segments.size() == 1 && to_long(P.segments[0].root_val_pi.get_den()) == f.degree()) {
        out.push_back(f);  // certified irreducible, nothing to do
        return;
    }

    const Fq& k = F->residue_field();

    // vertex split: an integral scale strictly between adjacent root valuations
    for (size_t si = 0; si + 1 < P.segments.size(); ++si) {
        const Rat& rhi = P.segments[si].root_val_pi;
        const Rat& rlo = P.segments[si + 1].root_val_pi;
        Int lo = rat_floor(rlo) + 1;
        if (!(Rat(lo) > rlo && Rat(lo) < rhi)) continue;
        long t = to_long(lo);
        TowerElem mu = F->monomial(t);
        DensePoly g = poly_scale_x(f, mu);
        long m0 = rat_to_long_exact(poly_min_val_pi(g));
        g = poly_scale(g, F->monomial(-m0));
        // the reduction is concentrated at the separating vertex
        long istar = P.vertices[si + 1].first;
        FqPoly gb = reduction_poly(g);
        if (gb.degree() < istar || k.is_zero(gb.c[istar]))
            throw PrecisionError("scaled reduction misses the separating vertex");
        FqPoly gbar;
        gbar.c.assign(istar + 1, k.zero());
        gbar.c[istar] = k.one();
        FqPoly hbar;
        hbar.c.assign(gb.c.begin() + istar, gb.c.end());
        split_and_recurse(f, g, gbar, hbar, mu, out);
        return;
    }

    // flat split: scale a segment of integral root valuation to height 0 and
    // factor its reduction into coprime parts
    for (const auto& seg : P.segments) {
        if (!rat_is_int(seg.root_val_pi)) continue;
        long t = rat_to_long_exact(seg.root_val_pi);
        TowerElem mu = F->monomial(t);
        DensePoly g = poly_scale_x(f, mu);
        long m0 = rat_to_long_exact(poly_min_val_pi(g));
        g = poly_scale(g, F->monomial(-m0));
        FqPoly gb = reduction_poly(g);
        auto parts = fqp_factor(k, gb);
        if (parts.size() < 2) continue;
        FqPoly gbar = fqp_one(k);
        for (unsigned j = 0; j < parts[0].second; ++j) gbar = fqp_mul(k, gbar, parts[0].first);
        FqPoly hbar = fqp_one(k);
        for (size_t pi = 1; pi < parts.size(); ++pi)
            for (unsigned j = 0; j < parts[pi].second; ++j) hbar = fqp_mul(k, hbar, parts[pi].first);
        hbar = fqp_scale(k, hbar, gb.c.back());
        split_and_recurse(f, g, gbar, hbar, mu, out);
        return;
    }

    // no split available for this piece (primary residual, or a separating
    // scale that would need a ramified base extension); keep it whole
    out.push_back(f);
}

}  // namespace

std::vector<DensePoly> hensel_split(const DensePoly& f) {
    if (f.is_zero()) throw DomainError("cannot factor the zero polynomial");
    if (f.degree() <= 1) throw CannotSplitError("degree <= 1");
    std::vector<DensePoly> out;
    hensel_split_rec(f, out);
    if (out.size() < 2) throw CannotSplitError("polynomial did not separate");
    return out;
}

// ------------------------------------------------------------- root finding

namespace {

// drop low coefficients indistinguishable from 0 (a root at the expansion
// point, exact or at working precision); later digits are recovered by
// Newton refinement against the original polynomial
DensePoly strip_low_zeros(const DensePoly& f, bool& root_here) {
    size_t k = 0;
    while (k + 1 < f.c.size() && (f.c[k].exact_zero || is_zero_at_precision(f.c[k]))) ++k;
    root_here = k > 0;
    if (k == 0) return f;
    DensePoly g;
    g.F = f.F;
    g.c.assign(f.c.begin() + k, f.c.end());
    return g;
}

// roots of f with valuation strictly above min_val_pi (all roots when unset),
// relative to the current shift
void roots_rec(const DensePoly& f0, std::optional<Rat> min_val_pi, int depth,
               RootSearchResult& res) {
    const FieldPtr& F = f0.F;
    if (f0.degree() < 1) return;
    if (depth <= 0) {
        res.inconclusive = true;
        res.notes.push_back("digit descent depth exhausted");
        return;
    }
    bool root_here = false;
    DensePoly f = strip_low_zeros(f0, root_here);
    if (root_here) res.roots.push_back(F->zero());
    if (f.degree() < 1) return;
    NewtonPolygon P = newton_polygon(f);
    const Fq& k = F->residue_field();
    DensePoly fprime = poly_derivative(f0);
    for (const auto& seg : P.segments) {
        if (min_val_pi && seg.root_val_pi <= *min_val_pi) continue;
        if (!rat_is_int(seg.root_val_pi)) {
            res.notes.push_back("segment of length " + std::to_string(seg.length) +
                                " at root valuation " + rat_str(seg.root_val_pi) +
                                " pi-units: fractional valuation, no roots in the field");
            continue;
        }
        long t = rat_to_long_exact(seg.root_val_pi);
        TowerElem mu = F->monomial(t);
        FqPoly rho = seg.residual;
        FqPoly rho_d = fqp_derivative(k, rho);
        for (const Fq::Elem& z : fqp_roots(k, rho)) {
            if (k.is_zero(z)) continue;
            TowerElem x0 = mul(mu, F->from_residue(z));
            bool lifted = false;
            if (!k.is_zero(fqp_eval(k, rho_d, z))) {
                // simple residue root: Newton. The start criterion
                // 2 v(f'(x0)) < v(f(x0)) certifies the fast path; without it
                // (clustered far roots) iterate in guarded mode, demanding a
                // strict gain in v(f(x)) every step
                TowerElem x = x0;
                bool ok = true, converged = false, guarded = false;
                std::optional<Rat> last_vfx;
                for (int it = 0; it < 200 && !converged; ++it) {
                    TowerElem fx = poly_eval(f0, x);
                    if (fx.exact_zero || is_zero_at_precision(fx)) {
                        converged = true;
                        break;
                    }
                    TowerElem fpx = poly_eval(fprime, x);
                    if (is_zero_at_precision(fpx)) {
                        ok = false;
                        break;
                    }
                    Rat vfx = valuation_or_throw(fx);
                    if (it == 0) guarded = !(vfx > 2 * valuation_or_throw(fpx));
                    if (guarded) {
                        if (last_vfx && vfx <= *last_vfx) {
                            ok = false;  // not contracting toward a root
                            break;
                        }
                        last_vfx = vfx;
                    }
                    TowerElem delta = div(fx, fpx);
                    if (is_zero_at_precision(delta)) {
                        converged = true;
                        break;
                    }
                    x = sub(x, delta);
                }
                if (ok && converged) {
                    // certified accuracy: v(f(x~)) - v(f'(x~)) with x~ the
                    // exact representative of x (evaluating at the claimed
                    // precision of x would restate the claim, not check it)
                    TowerElem xe = x;
                    xe.prec = Rat(xe.pshift + F->coeff_prec());
                    TowerElem fx2 = poly_eval(f0, xe);
                    TowerElem fpx2 = poly_eval(fprime, xe);
                    auto vfp = valuation(fpx2);
                    if (!vfp) {
                        ok = false;
                    } else {
                        auto vfx = valuation(fx2);
                        Rat floor = (vfx ? *vfx : fx2.prec) - *vfp;
                        if (x.prec > floor) x.prec = floor;
                        res.roots.push_back(x);
                        lifted = true;
                    }
                }
            }
            if (!lifted) {
                // repeated residue root: descend one digit
                DensePoly f2 = poly_taylor_shift(f0, x0);
                size_t before = res.roots.size();
                roots_rec(f2, seg.root_val_pi, depth - 1, res);
                for (size_t i = before; i < res.roots.size(); ++i)
                    res.roots[i] = add(x0, res.roots[i]);
            }
        }
    }
}

}  // namespace

RootSearchResult roots_in_field(const DensePoly& f, int depth_cap) {
    if (f.is_zero()) throw DomainError("root search on the zero polynomial");
    RootSearchResult res;
    roots_rec(f, std::nullopt, depth_cap, res);
    if (res.roots.size() > static_cast<size_t>(f.degree()))
        throw Error("root search produced more roots than the degree");
    return res;
}

// --------------------------------------------------- determinant / charpoly

TowerElem det_gauss(std::vector<std::vector<TowerElem>> M) {
    const size_t n = M.size();
    if (n == 0) throw DomainError("determinant of an empty matrix");
    const FieldPtr F = M[0][0].F;
    TowerElem acc = F->one();
    bool negate = false;
    for (size_t col = 0; col < n; ++col) {
        std::optional<size_t> piv;
        std::optional<Rat> pv;
        for (size_t r = col; r < n; ++r) {
            auto v = valuation(M[r][col]);
            if (v && (!pv || *v < *pv)) {
                pv = *v;
                piv = r;
            }
        }
        if (!piv) throw PrecisionError("matrix is singular at the working precision");
        if (*piv != col) {
            std::swap(M[*piv], M[col]);
            negate = !negate;
        }
        const TowerElem pivot = M[col][col];
        acc = mul(acc, pivot);
        TowerElem pinv = inv(pivot);
        for (size_t r = col + 1; r < n; ++r) {
            if (M[r][col].exact_zero || is_zero_at_precision(M[r][col])) continue;
            TowerElem fac = mul(M[r][col], pinv);
            for (size_t c2 = col; c2 < n; ++c2) M[r][c2] = sub(M[r][c2], mul(fac, M[col][c2]));
        }
    }
    return negate ? neg(acc) : acc;
}

namespace {

// matrix of multiplication by g on the basis 1, Y, ..., Y^{d-1} of F[Y]/(T)
std::vector<std::vector<TowerElem>> mult_matrix(const DensePoly& T, const DensePoly& g) {
    const FieldPtr& F = T.F;
    const long d = T.degree();
    std::vector<std::vector<TowerElem>> M(d, std::vector<TowerElem>(d, F->zero()));
    DensePoly col = poly_mod_monic(g, T);
    for (long j = 0; j < d; ++j) {
        for (long i = 0; i <= col.degree(); ++i) M[i][j] = col.c[i];
        if (j + 1 < d) {
            col.c.insert(col.c.begin(), F->zero());
            col = poly_mod_monic(col, T);
        }
    }
    return M;
}

}  // namespace

TowerElem resultant_monic(const DensePoly& T, const DensePoly& g) {
    if (T.degree() < 1) throw DomainError("resultant needs deg T >= 1");
    if (g.is_zero()) return T.F->zero();
    return det_gauss(mult_matrix(T, g));
}

TowerElem discriminant_monic(const DensePoly& T) {
    const long d = T.degree();
    TowerElem r = resultant_monic(T, poly_derivative(T));
    if (((d * (d - 1)) / 2) % 2) r = neg(r);
    return r;
}

DensePoly charpoly_mod(const DensePoly& T, const DensePoly& g) {
    const FieldPtr& F = T.F;
    const long d = T.degree();
    if (d < 1) throw DomainError("charpoly needs deg T >= 1");
    const Fq& k = F->residue_field();
    if (k.size() < static_cast<uint64_t>(d) + 1)
        throw DomainError("residue field too small to supply interpolation nodes");
    auto M = mult_matrix(T, g);

    std::vector<TowerElem> nodes;
    for (long tidx = 0; tidx <= d; ++tidx) nodes.push_back(F->from_residue(k.from_index(tidx)));
    std::vector<TowerElem> dets;
    for (long tidx = 0; tidx <= d; ++tidx) {
        auto A = M;
        for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j)
                A[i][j] = (i == j) ? sub(nodes[tidx], A[i][j]) : neg(A[i][j]);
        dets.push_back(det_gauss(std::move(A)));
    }

    DensePoly full = poly_one(F);
    for (long tidx = 0; tidx <= d; ++tidx)
        full = poly_mul(full, poly_make(F, {neg(nodes[tidx]), F->one()}));
    DensePoly W = poly_zero(F);
    for (long tidx = 0; tidx <= d; ++tidx) {
        DensePoly numer, rem;
        poly_divrem_monic(full, poly_make(F, {neg(nodes[tidx]), F->one()}), numer, rem);
        TowerElem denom = F->one();
        for (long s = 0; s <= d; ++s)
            if (s != tidx) denom = mul(denom, sub(nodes[tidx], nodes[s]));
        W = poly_add(W, poly_scale(numer, mul(dets[tidx], inv(denom))));
    }
    W.c.resize(static_cast<size_t>(d) + 1, F->zero());
    W.c[d] = F->one();  // det(X I - M) is monic of degree d
    return W;
}

// ------------------------------------------------------------ extend_by_root

std::pair<FieldPtr, TowerElem> extend_by_root(const DensePoly& f, const std::string& name,
                                              int shift_cap) {
    const FieldPtr& F = f.F;
    if (f.degree() < 2) throw DomainError("extend_by_root: degree must be >= 2");
    DensePoly fm = poly_monicize(f);
    const long d = fm.degree();
    TowerElem shift = F->zero();
    const Fq& k = F->residue_field();
    for (int round = 0; round < shift_cap; ++round) {
        NewtonPolygon P = newton_polygon(fm);
        if (P.vanishing_order > 0)
            throw DomainError("extend_by_root: a root lies in the coefficient field");
        if (P.segments.size() != 1)
            throw DomainError("extend_by_root: polygon splits; factor first");
        const Rat& r = P.segments.front().root_val_pi;
        if (r < 0) throw DomainError("extend_by_root: roots are not integral");
        if (r == 0) {
            // all roots must share one residue: shift by its lift and retry
            const FqPoly& rho = P.segments.front().residual;
            auto zs = fqp_roots(k, rho);
            if (zs.size() != 1)
                throw DomainError("extend_by_root: mixed unit residues, cannot certify");
            FqPoly bin = fqp_one(k);
            FqPoly lin = fqp_make(k, {k.neg(zs[0]), k.one()});
            for (long i = 0; i < d; ++i) bin = fqp_mul(k, bin, lin);
            bin = fqp_scale(k, bin, rho.c.back());
            if (!fqp_equal(k, bin, rho))
                throw DomainError("extend_by_root: unit residual is not a pure power");
            TowerElem s = F->from_residue(zs[0]);
            fm = poly_taylor_shift(fm, s);
            shift = add(shift, s);
            continue;
        }
        long b = to_long(r.get_den());
        long a = to_long(r.get_num());
        if (b != d)
            throw DomainError("extend_by_root: slope denominator " + std::to_string(b) +
                              " is below the degree " + std::to_string(d) + ", no certificate");
        std::vector<TowerElem> coeffs(fm.c.begin(), fm.c.end() - 1);
        FieldPtr L = F->extend_root(coeffs, a, name);
        return {L, add(L->generator(), L->embed(shift))};
    }
    throw DomainError("extend_by_root: shift cap exceeded");
}

RootFieldResult certified_root_field(const DensePoly& T0, const std::string& name, int rounds) {
    const FieldPtr& F = T0.F;
    if (T0.degree() < 2) throw DomainError("certified_root_field: degree must be >= 2");
    DensePoly T = poly_monicize(T0);
    const long d = T.degree();
    const Fq& k = F->residue_field();

    // extract the single residue of a unit of the quotient algebra from the
    // reduction of its characteristic polynomial, which must be (Z - r)^d
    auto common_residue = [&](const NewtonPolygon& P) {
        if (P.segments.size() != 1 || P.segments[0].root_val_pi != 0)
            throw DomainError("certified_root_field: expected a unit candidate");
        const FqPoly& rho = P.segments[0].residual;
        auto zs = fqp_roots(k, rho);
        if (zs.size() != 1)
            throw DomainError("certified_root_field: mixed unit residues (extension not "
                              "totally ramified, or T reducible)");
        FqPoly bin = fqp_one(k);
        FqPoly lin = fqp_make(k, {k.neg(zs[0]), k.one()});
        for (long i = 0; i < rho.degree(); ++i) bin = fqp_mul(k, bin, lin);
        bin = fqp_scale(k, bin, rho.c.back());
        if (!fqp_equal(k, bin, rho))
            throw DomainError("certified_root_field: unit residual is not a pure power");
        return zs[0];
    };

    RootFieldResult out;
    DensePoly g = poly_x(F);  // candidate primitive element, as a class mod T
    for (int round = 0; round < rounds; ++round) {
        DensePoly W = (g.degree() == 1 && g.c.size() == 2 && g.c[0].exact_zero &&
                       equal_at_precision(g.c[1], F->one()))
                          ? T
                          : charpoly_mod(T, g);
        NewtonPolygon P = newton_polygon(W);
        if (P.vanishing_order > 0)
            throw DomainError("certified_root_field: candidate degenerated to a subfield element");
        if (P.segments.size() != 1)
            throw DomainError("certified_root_field: polygon splits; T is reducible");
        const Rat& r = P.segments[0].root_val_pi;
        if (r < 0) throw DomainError("certified_root_field: non-integral candidate");
        long b = to_long(r.get_den());
        long a = to_long(r.get_num());
        if (r > 0 && b == d) {
            std::vector<TowerElem> coeffs(W.c.begin(), W.c.end() - 1);
            out.L = F->extend_root(coeffs, a, name);
            out.W = W;
            out.primitive = g;
            out.refinements = round;
            RootSearchResult rr = roots_in_field(poly_embed(T, out.L));
            if (rr.inconclusive || rr.roots.size() != static_cast<size_t>(d))
                throw PrecisionError("certified_root_field: expected " + std::to_string(d) +
                                     " roots in the certified field, found " +
                                     std::to_string(rr.roots.size()));
            out.roots = rr.roots;
            return out;
        }
        if (r == 0) {
            // unit candidate: subtract the common residue
            Fq::Elem z = common_residue(P);
            DensePoly lift = poly_make(F, {F->from_residue(z)});
            g = poly_sub(g, lift);
            continue;
        }
        // 0 < r = a/b with b < d: refine g -> g^b mu(-a) - (residue lift)
        DensePoly gb = poly_one(F);
        for (long i = 0; i < b; ++i) gb = poly_mod_monic(poly_mul(gb, g), T);
        DensePoly u = poly_scale(gb, F->monomial(-a));
        DensePoly Wu = charpoly_mod(T, u);
        Fq::Elem z = common_residue(newton_polygon(Wu));
        g = poly_sub(u, poly_make(F, {F->from_residue(z)}));
    }
    throw PrecisionError("certified_root_field: refinement did not certify within the round cap");
}

}  // namespace ramlab
