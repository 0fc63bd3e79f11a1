#include "ramlab/filtration.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ramlab {

// --------------------------------------------------------- FiltrationProfile

Int FiltrationProfile::order_at(const Rat& u) const {
    if (u <= 0) return order0;
    Rat prev = 0;
    for (const auto& s : segs) {
        if (u <= s.upto) return s.order;
        prev = s.upto;
    }
    return 1;
}

std::string FiltrationProfile::label_at(const Rat& u) const {
    if (u <= 0) return label0;
    for (const auto& s : segs)
        if (u <= s.upto) return s.label;
    return "1";
}

void FiltrationProfile::validate() const {
    if (full_order % order0 != 0) throw DomainError("profile: |G_-1| not a multiple of |G_0|");
    Int prev_order = order0;
    Rat prev_break = 0;
    bool first = true;
    for (const auto& s : segs) {
        if (s.upto <= prev_break) throw DomainError("profile: breaks not increasing");
        // the first wild segment may restate |G_0| (the case G_0 = G_1)
        bool drop_ok = first ? (s.order <= prev_order) : (s.order < prev_order);
        if (!drop_ok || s.order < 1 || prev_order % s.order != 0)
            throw DomainError("profile: orders must strictly decrease and divide");
        if (mode == FiltMode::lower && !rat_is_int(s.upto))
            throw DomainError("profile: lower breaks must be integers");
        prev_order = s.order;
        prev_break = s.upto;
        first = false;
    }
    // beyond the last break the subgroup is trivial (implicit)
}

// --------------------------------------------------------------- HerbrandFn

Rat HerbrandFn::eval(const Rat& x) const {
    if (x <= 0) return x;  // slope 1 through the origin on [-1, 0]
    Rat px = 0, py = 0;
    for (size_t i = 1; i < vertices.size(); ++i) {
        const auto& [vx, vy] = vertices[i];
        if (x <= vx) {
            const auto& [ax, ay] = vertices[i - 1];
            return ay + (vy - ay) * (x - ax) / (vx - ax);
        }
        px = vx;
        py = vy;
    }
    return py + final_slope * (x - px);
}

HerbrandFn HerbrandFn::inverse() const {
    HerbrandFn r;
    r.vertices.reserve(vertices.size());
    for (const auto& [x, y] : vertices) r.vertices.push_back({y, x});
    r.final_slope = 1 / final_slope;
    return r;
}

HerbrandFn phi_of(const FiltrationProfile& lower) {
    if (lower.mode != FiltMode::lower) throw DomainError("phi needs a lower-numbered profile");
    HerbrandFn f;
    f.vertices.push_back({0, 0});
    Rat x = 0, y = 0;
    for (const auto& s : lower.segs) {
        Rat slope = rat(s.order, lower.order0);
        y += (s.upto - x) * slope;
        x = s.upto;
        f.vertices.push_back({x, y});
    }
    f.final_slope = rat(Int(1), lower.order0);
    return f;
}

HerbrandFn psi_of(const FiltrationProfile& lower) { return phi_of(lower).inverse(); }

FiltrationProfile to_upper(const FiltrationProfile& lower) {
    HerbrandFn phi = phi_of(lower);
    FiltrationProfile up = lower;
    up.mode = FiltMode::upper;
    for (auto& s : up.segs) s.upto = phi.eval(s.upto);
    return up;
}

FiltrationProfile to_lower(const FiltrationProfile& upper) {
    if (upper.mode != FiltMode::upper) throw DomainError("to_lower needs an upper profile");
    // psi'(v) = [G^0 : G^v]
    FiltrationProfile low = upper;
    low.mode = FiltMode::lower;
    Rat x = 0;  // upper coordinate
    Rat y = 0;  // lower coordinate
    for (auto& s : low.segs) {
        Rat slope = rat(upper.order0, s.order);
        y += (s.upto - x) * slope;
        x = s.upto;
        if (!rat_is_int(y))
            throw DomainError("upper profile maps to a non-integral lower break " + rat_str(y));
        s.upto = y;
    }
    low.validate();
    return low;
}

// ------------------------------------------------------------- compose_tower

FiltrationProfile compose_tower(const FiltrationProfile& sub, const FiltrationProfile& quot,
                                const ComposeGlue& glue) {
    if (sub.mode != FiltMode::lower || quot.mode != FiltMode::lower)
        throw DomainError("compose_tower expects lower-numbered profiles");
    sub.validate();
    quot.validate();
    if (sub.full_order != sub.order0 || quot.tame_index() != 1)
        throw DomainError("compose_tower: tame parts are handled by tame_base_change");

    HerbrandFn phi_sub = phi_of(sub);
    HerbrandFn psi_sub = phi_sub.inverse();

    // candidate integer breaks: sub breaks and floor(psi(quot breaks))
    std::set<Int> cand;
    for (const auto& s : sub.segs) cand.insert(s.upto.get_num());
    for (const auto& s : quot.segs) cand.insert(rat_floor(psi_sub.eval(s.upto)));

    FiltrationProfile out;
    out.group_name = glue.group_name;
    out.mode = FiltMode::lower;
    out.order0 = sub.order0 * quot.order0;
    out.full_order = out.order0;
    out.label0 = glue.quot_label_map.count(quot.label0) ? glue.quot_label_map.at(quot.label0)
                                                        : quot.label0;

    auto composite_at = [&](const Rat& j) -> std::pair<Int, std::string> {
        // |G_j| = |(G/H)_{phi_sub(j)}| * |H_j|
        Rat v = phi_sub.eval(j);
        Int qo = quot.order_at(rat_ceil(v));
        Int so = sub.order_at(j);
        if (qo > 1 && so != sub.order0)
            throw DomainError("compose_tower: incompatible filtrations (quotient still "
                              "nontrivial where the subgroup chain has dropped)");
        std::string label;
        if (qo > 1) {
            std::string ql = quot.label_at(rat_ceil(v));
            label = glue.quot_label_map.count(ql) ? glue.quot_label_map.at(ql) : ql;
        } else {
            label = sub.label_at(j);
        }
        return {qo * so, label};
    };

    Rat prev = 0;
    for (const Int& b : cand) {
        Rat u = Rat(b);
        if (u <= prev) continue;
        auto [order, label] = composite_at(u);
        if (order == 1) continue;
        if (!out.segs.empty() && out.segs.back().order == order) {
            out.segs.back().upto = u;  // merge equal consecutive
        } else {
            out.segs.push_back({u, label, order});
        }
        prev = u;
    }
    out.validate();
    return out;
}

// --------------------------------------------------- product / tame change

FiltrationProfile product_arith_disjoint(const FiltrationProfile& a,
                                         const FiltrationProfile& b, bool* advisory_disjoint) {
    if (a.mode != FiltMode::upper || b.mode != FiltMode::upper)
        throw DomainError("product_arith_disjoint expects upper profiles");
    if (advisory_disjoint) {
        // sufficient check: the sets of positive upper breaks are disjoint
        std::set<Rat> ba, bb;
        for (const auto& s : a.segs) ba.insert(s.upto);
        for (const auto& s : b.segs) bb.insert(s.upto);
        *advisory_disjoint = true;
        for (const auto& x : ba)
            if (bb.count(x)) *advisory_disjoint = false;
    }
    std::set<Rat> breaks;
    for (const auto& s : a.segs) breaks.insert(s.upto);
    for (const auto& s : b.segs) breaks.insert(s.upto);

    FiltrationProfile out;
    out.group_name = a.group_name + "x" + b.group_name;
    out.mode = FiltMode::upper;
    out.order0 = a.order0 * b.order0;
    out.full_order = a.full_order * b.full_order;
    out.label0 = a.label0 + "x" + b.label0;
    for (const Rat& u : breaks) {
        Int order = a.order_at(u) * b.order_at(u);
        std::string label = a.label_at(u) + "x" + b.label_at(u);
        if (order == 1) continue;
        if (!out.segs.empty() && out.segs.back().order == order)
            out.segs.back().upto = u;
        else
            out.segs.push_back({u, label, order});
    }
    // drop a trailing all-trivial segment only if empty profile; append the
    // terminal drop to trivial implicitly
    out.validate();
    return out;
}

FiltrationProfile tame_base_change(const FiltrationProfile& lower, long tame_degree, unsigned p,
                                   const std::string& label0_new) {
    if (lower.mode != FiltMode::lower) throw DomainError("tame_base_change expects a lower profile");
    if (tame_degree < 1 || tame_degree % p == 0)
        throw DomainError("tame degree must be positive and prime to p");
    FiltrationProfile out = lower;
    out.order0 *= tame_degree;
    out.full_order = out.order0;
    out.label0 = label0_new;
    out.group_name = lower.group_name + ":tame" + std::to_string(tame_degree);
    // lower numbering uses v_M of the unchanged top field: the wild chain and
    // its breaks stay as they are
    out.validate();
    return out;
}

// ------------------------------------------------------ filtration from roots

TowerElem apply_deepest_auto(const TowerElem& x, const TowerElem& gen_image) {
    const FieldPtr& L = x.F;
    if (L->is_base()) throw DomainError("apply_deepest_auto: base field has no automorphisms here");
    const size_t sub = L->parent()->dim();
    const long m = L->step().m;
    // Horner in the deepest generator with parent-field blocks
    TowerElem acc = L->zero();
    for (long i = m; i-- > 0;) {
        acc = mul(acc, gen_image);
        TowerElem block;
        block.F = L;
        block.c.assign(L->dim(), Int(0));
        bool nz = false;
        for (size_t t = 0; t < sub; ++t) {
            block.c[t] = x.c[i * sub + t];
            if (mpz_sgn(block.c[t].get_mpz_t()) != 0) nz = true;
        }
        block.pshift = x.pshift;
        block.prec = x.prec;
        block.exact_zero = !nz;
        normalize(block);
        acc = add(acc, block);
    }
    return acc;
}

RootFiltrationResult filtration_from_roots(
    const FieldPtr& L, const std::vector<TowerElem>& gen_conjugates,
    const TowerElem& uniformizer, const std::string& group_name,
    const std::function<std::string(const Int&)>& labeler) {
    const size_t n = gen_conjugates.size();
    if (n < 2) throw DomainError("filtration_from_roots: need at least two conjugates");
    {
        auto vu = valuation_pi(uniformizer);
        if (!vu || *vu != 1)
            throw DomainError("filtration_from_roots: not a uniformizer of the field");
    }

    // permutation action: sigma_i maps conjugate j to the unique conjugate k
    // with sigma_i(c_j) = c_k at precision
    std::vector<std::vector<int>> perm(n, std::vector<int>(n, -1));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            TowerElem img = apply_deepest_auto(gen_conjugates[j], gen_conjugates[i]);
            int hit = -1;
            for (size_t k = 0; k < n; ++k) {
                if (equal_at_precision(img, gen_conjugates[k])) {
                    if (hit >= 0)
                        throw PrecisionError("root permutation is ambiguous at this precision");
                    hit = static_cast<int>(k);
                }
            }
            if (hit < 0)
                throw DomainError("permutation set is not a group at precision: sigma_" +
                                  std::to_string(i) + " escapes the conjugate list");
            perm[i][j] = hit;
        }
        // bijectivity
        std::set<int> targets(perm[i].begin(), perm[i].end());
        if (targets.size() != n)
            throw DomainError("permutation set is not a group at precision: not bijective");
    }
    // closure under composition
    {
        std::set<std::vector<int>> all(perm.begin(), perm.end());
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                std::vector<int> comp(n);
                for (size_t t = 0; t < n; ++t) comp[t] = perm[i][perm[j][t]];
                if (!all.count(comp))
                    throw DomainError("permutation set is not a group at precision: not closed");
            }
    }

    // i_G(sigma) = v_L(sigma(z) - z), pi-units
    std::vector<long> igs;
    Int diff_sum = 0;
    for (size_t i = 0; i < n; ++i) {
        bool identity = true;
        for (size_t t = 0; t < n; ++t)
            if (perm[i][t] != static_cast<int>(t)) identity = false;
        if (identity) continue;
        TowerElem dz = sub(apply_deepest_auto(uniformizer, gen_conjugates[i]), uniformizer);
        auto v = valuation_pi(dz);
        if (!v) throw PrecisionError("i_G undetermined at the working precision");
        if (!rat_is_int(*v)) throw Error("i_G came out non-integral: " + rat_str(*v));
        igs.push_back(to_long(v->get_num()));
        diff_sum += igs.back();
    }
    if (igs.size() + 1 != n)
        throw DomainError("conjugate list contains no identity or several");

    FiltrationProfile prof;
    prof.group_name = group_name;
    prof.mode = FiltMode::lower;
    prof.order0 = Int(static_cast<long>(n));
    prof.full_order = prof.order0;
    prof.label0 = labeler(prof.order0);
    std::vector<long> sorted = igs;
    std::sort(sorted.begin(), sorted.end());
    // G_j = {sigma : i(sigma) >= j+1} + identity; breaks where the count drops
    long j = 0;
    size_t idx = 0;
    while (idx < sorted.size()) {
        long ig = sorted[idx];
        size_t same = 0;
        while (idx + same < sorted.size() && sorted[idx + same] == ig) ++same;
        // for j in (prev, ig - 1]: |G_j| = 1 + number of igs > j ... the drop
        // after this block happens at break ig - 1
        long members_above = static_cast<long>(sorted.size() - idx);
        Int order = Int(members_above + 1);
        long breakpoint = ig - 1;
        if (breakpoint >= j) {
            prof.segs.push_back({Rat(breakpoint), labeler(order), order});
            j = breakpoint;
        }
        idx += same;
    }
    // normalize the leading segment: G_0 portion is implicit via order0; if
    // the first break is at 0 it only restates |G_0|
    if (!prof.segs.empty() && prof.segs.front().upto == 0) {
        prof.order0 = prof.segs.front().order;
        prof.label0 = prof.segs.front().label;
        // keep full order as the permutation count (tame part above wild)
        prof.segs.erase(prof.segs.begin());
    }
    prof.validate();
    return RootFiltrationResult{std::move(prof), std::move(igs), diff_sum};
}

// ------------------------------------------------------------ Kummer / Hyodo

DifferentResult different_from_kummer(const KummerDatum& d) {
    Rat bound = rat(Int(d.p) * d.vK_p_pi, Int(d.p - 1));
    if (d.s <= 0 || Rat(d.s) >= bound)
        throw DomainError("Kummer datum not in the wild range: s = " + std::to_string(d.s) +
                          ", need 0 < s < " + rat_str(bound));
    if (std::gcd(d.s, static_cast<long>(d.p)) != 1)
        throw DomainError("Kummer datum needs gcd(s, p) = 1");
    DifferentResult r;
    r.vK_pi = Rat(d.vK_p_pi) + rat(Int(d.p - 1) * Int(1 - d.s), Int(d.p));
    Rat vl = r.vK_pi * d.p;
    if (!rat_is_int(vl)) throw Error("v_L(different) came out non-integral");
    r.vL_pi = vl.get_num();
    return r;
}

long break_from_different(const Int& vL_diff_pi, unsigned p) {
    if (vL_diff_pi % Int(p - 1) != 0)
        throw DomainError("v_L(different) = " + vL_diff_pi.get_str() +
                          " is not divisible by p - 1; not a single-break degree-p datum");
    return to_long(vL_diff_pi / Int(p - 1)) - 1;
}

KummerNormalForm kummer_normal_form(const TowerElem& U0) {
    const FieldPtr& F = U0.F;
    const unsigned p = F->p();
    const Fq& k = F->residue_field();
    {
        auto v = valuation(U0);
        if (!v || *v != 0) throw DomainError("kummer_normal_form expects a unit");
    }
    Rat bound = rat(Int(p) * F->e(), Int(p - 1));  // v_pi(lambda^p) = p e/(p-1)
    TowerElem U = U0;
    long last = 0;
    for (int guard = 0; guard < 4096; ++guard) {
        TowerElem delta = sub(U, F->one());
        auto v = valuation_pi(delta);
        if (!v || *v >= bound) {
            KummerNormalForm r;
            r.trivial_range = true;
            r.s = 0;
            r.w = F->one();
            return r;
        }
        if (!rat_is_int(*v)) throw Error("unit defect with non-integral valuation");
        long s = to_long(v->get_num());
        if (s <= last && guard > 0) throw PrecisionError("Kummer normal form stalled");
        last = s;
        if (s % p != 0) {
            KummerNormalForm r;
            r.trivial_range = false;
            r.s = s;
            r.w = mul(delta, F->monomial(-s));
            return r;
        }
        // remove the p-th-power head: divide by (1 + b pi^{s/p})^p with b^p = abar
        Fq::Elem abar = residue(mul(delta, F->monomial(-s)));
        TowerElem b = F->from_residue(k.frob_root(abar));
        TowerElem adj = add(F->one(), mul(b, F->monomial(s / p)));
        U = div(U, pow_i(adj, p));
    }
    throw PrecisionError("Kummer normal form did not terminate");
}

}  // namespace ramlab
