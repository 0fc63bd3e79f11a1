#pragma once

// Ramification filtration algebra: profiles in lower/upper numbering,
// Herbrand transforms, composition in towers, products of arithmetically
// disjoint extensions, tame base change, filtrations computed from root
// permutations, and the Kummer-extension different.

#include <functional>
#include <map>

#include "ramlab/tower.hpp"

namespace ramlab {

enum class FiltMode { lower, upper };

struct FiltSeg {
    Rat upto;           // G_u equals this subgroup for prev < u <= upto
    std::string label;
    Int order;
};

struct FiltrationProfile {
    std::string group_name;
    FiltMode mode = FiltMode::lower;
    Int full_order = 1;   // |G_{-1}|
    Int order0 = 1;       // |G_0|
    std::string label0;
    // wild chain: segs[j] covers (segs[j-1].upto, segs[j].upto] starting after 0;
    // the group is trivial beyond the last break. Orders strictly decrease.
    std::vector<FiltSeg> segs;

    Int order_at(const Rat& u) const;         // |G_u| for u > 0 (order0 at u <= 0)
    std::string label_at(const Rat& u) const;
    Int tame_index() const { return full_order / order0; }
    void validate() const;
};

// piecewise-linear Herbrand function: vertices from (0,0), then a final slope
struct HerbrandFn {
    std::vector<std::pair<Rat, Rat>> vertices;  // increasing x, starts at (0,0)
    Rat final_slope = 1;

    Rat eval(const Rat& x) const;
    HerbrandFn inverse() const;
};

// phi of a lower-numbered profile: slope |G_u|/|G_0|
HerbrandFn phi_of(const FiltrationProfile& lower);
// psi = phi^{-1} as a standalone transform
HerbrandFn psi_of(const FiltrationProfile& lower);

FiltrationProfile to_upper(const FiltrationProfile& lower);
// converts an upper profile back; lower breaks must come out integral
FiltrationProfile to_lower(const FiltrationProfile& upper);

struct ComposeGlue {
    std::string group_name;
    // composite label for the preimage of a quotient subgroup (used while the
    // quotient part is nontrivial); sub labels pass through unchanged
    std::map<std::string, std::string> quot_label_map;
};

// lower filtration of G from the lower filtrations of H (= Gal(M/L), `sub`)
// and G/H (= Gal(L/K), `quot`); H must be the tail of the composite chain
FiltrationProfile compose_tower(const FiltrationProfile& sub, const FiltrationProfile& quot,
                                const ComposeGlue& glue);

// upper filtration of a product of arithmetically disjoint extensions
// (pointwise product); disjointness itself is caller-asserted, and the
// sufficient upper-break check is reported through `advisory_disjoint`
FiltrationProfile product_arith_disjoint(const FiltrationProfile& a_upper,
                                         const FiltrationProfile& b_upper,
                                         bool* advisory_disjoint = nullptr);

// filtration over the tame-smaller base: a tame quotient joins at break 0,
// the wild chain is unchanged
FiltrationProfile tame_base_change(const FiltrationProfile& lower, long tame_degree, unsigned p,
                                   const std::string& label0_new);

struct RootFiltrationResult {
    FiltrationProfile profile;
    std::vector<long> igs;  // i_G(sigma) over sigma != 1, pi-units
    Int different_pi;       // sum = v_L(different)
};

// lower filtration of L/K from the Galois conjugates (inside L) of the
// deepest step generator; the extension must be totally ramified with
// [L : K(below)] = #conjugates
RootFiltrationResult filtration_from_roots(
    const FieldPtr& L, const std::vector<TowerElem>& gen_conjugates,
    const TowerElem& uniformizer, const std::string& group_name,
    const std::function<std::string(const Int&)>& labeler);

// apply the L-automorphism determined by generator |-> gen_image (fixing the
// tower below the deepest step) to x
TowerElem apply_deepest_auto(const TowerElem& x, const TowerElem& gen_image);

// ----- degree-p Kummer extensions -----

struct KummerDatum {
    unsigned p = 2;
    long s = 1;      // X^p = 1 + w pi^s
    Int vK_p_pi;     // v_K(p) in pi_K units
};

struct DifferentResult {
    Rat vK_pi;  // v_K(D_{L/K}), pi_K units
    Int vL_pi;  // v_L(D_{L/K}) = p * vK
};

// v_K(D) = v_K(p) + (p-1)/p * (1 - s) for 0 < s < p/(p-1) v_K(p), gcd(s,p)=1
DifferentResult different_from_kummer(const KummerDatum& d);

// single-break degree-p totally ramified: v_L(D) = (p-1)(t+1)
long break_from_different(const Int& vL_diff_pi, unsigned p);

struct KummerNormalForm {
    bool trivial_range = false;  // v(U-1) reached p/(p-1) v(p): no wild break
    long s = 0;                  // gcd(s, p) = 1
    TowerElem w;                 // unit class with U = (unit)^p (1 + w pi^s)
};

// write the unit U as (unit)^p (1 + w pi^s) with gcd(s, p) = 1 by repeated
// p-th power adjustments
KummerNormalForm kummer_normal_form(const TowerElem& U);

}  // namespace ramlab
