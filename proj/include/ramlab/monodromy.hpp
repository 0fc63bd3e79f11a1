#pragma once

// Construction and verification layer for the special covers: the modified
// monodromy polynomial L_c and its root analysis for p-cyclic covers of
// genus q(p-1)/2 with potential good reduction, and the genus-2 (p = 2)
// quintic machinery T_f with its degeneration-type classifier.

#include "ramlab/filtration.hpp"
#include "ramlab/newton.hpp"

namespace ramlab {

// ----- good-reduction scenarios: Y^p = 1 + c X^q + X^{1+q} -----

struct GoodReductionScenario {
    unsigned p = 2;
    unsigned n = 1;
    long q = 2;  // p^n
    unsigned f_ur = 8;
    long precision = 64;
    std::string c_expr = "1";

    FieldPtr K;          // Q_p^ur(lambda^{1/(1+q)}) proxy
    TowerElem c;
    TowerElem lam;       // zeta_p - 1 (= -2 for p = 2)
    TowerElem lam_pq1;   // lambda^{p/(1+q)}, exact generator power
    Int a_n, b_n;
    bool wild = false;      // v(c) < v(lambda^{p/(1+q)})
    bool hyp_cpc = false;   // v(c^p - c) >= v(p)
};

GoodReductionScenario make_good_reduction(unsigned p, unsigned n, const std::string& c_expr = "1",
                                          unsigned f_ur = 8, long precision = 64);

DensePoly build_fqc(const GoodReductionScenario& sc);  // 1 + c X^q + X^{1+q}
// L_c = X^{q^2} - a_n (c + X) f_{q,c}(X)^{q-1}
DensePoly build_Lc(const GoodReductionScenario& sc);

// v(a_n c)/q^2, asserted against the Newton polygon of L_c (single segment
// certifying exactly this valuation for all q^2 roots)
Rat step1_root_valuation(const GoodReductionScenario& sc);

struct SplittingField {
    FieldPtr L;                      // K(y)
    DensePoly W;                     // the certified step polynomial defining L over K
    IrreducibilityCertificate cert;  // single-slope-denominator certificate for W
    bool via_charpoly = false;       // false: L_c certified directly; true: via w = y^{q^2/p} - c b_n
    TowerElem y;                     // the distinguished root of L_c matching the generator
    std::vector<TowerElem> roots;    // all q^2 roots of L_c in L
    std::vector<TowerElem> gen_conjugates;  // Galois conjugates of the step generator
    TowerElem z;                     // a uniformizer of L (pi_K^{q^2}/w on the charpoly route)
};

// requires the wild branch; certifies irreducibility of L_c and realizes the
// splitting field as a certified tower
SplittingField build_splitting_field(const GoodReductionScenario& sc);

struct Step5Report {
    Rat lc_prime_val;    // v(L_c'(y)), v(p)=1 units
    Rat expected;        // (q^2-1) v(lambda^{p/(1+q)})
    Rat pairwise_val;    // common v(y_i - y_j)
    bool all_pairs_equal = false;
};
Step5Report step5_root_separation(const GoodReductionScenario& sc, const SplittingField& sf);

struct Step3Report {
    bool bounds_ok = true;        // v(B_i) >= (1 + 1/p + ... + 1/p^{i-1}) v(p)
    bool integral_ok = true;      // p^{-1} B_i integral for i >= 1
    bool b0_matches = true;       // B_0 = c + y
    bool closed_form_ok = true;   // B_i / f(y) = (-p)(-p)^{-1-p-...-p^{n-i}} (-y^q/f(y))^{p^{n-i}}
    bool congruences_ok = true;   // the full chain of expansions mod lambda^p m[T]
    bool aux_binomial_ok = true;  // (A+B)^q = (A^{q/p}+B^{q/p})^p mod p^2 m[T]
    long failing_index = -1;
};
Step3Report verify_step3(const GoodReductionScenario& sc, const SplittingField& sf);

struct StepDReport {
    Int s;                 // (q+1)(p q^2 - 1)
    Rat h_val_pi;          // v_L(h) with h = y^{q^2/p}/b_n - c; expected q^2 - 1
    Rat lead_val_pi;       // v_L(p y^{q/p} h); expected s
    bool remainder_ok = false;  // v_L(f(y) u^p - 1 - p y^{q/p} h) > s
    Int vM_different;      // (p-1)(q+2) via the Kummer different
    long top_break;        // q + 1
};
StepDReport stepD_kummer_form(const GoodReductionScenario& sc, const SplittingField& sf);

// trivial-branch reduction: X = lambda^{p/(1+q)} T, Y = lambda W + 1 turns the
// cover into w^p - w = a t^q + t^{1+q}; checked coefficient by coefficient
struct ReductionIdentity {
    bool ok = false;
    Fq::Elem a;  // residue coefficient of t^q
};
ReductionIdentity good_reduction_residue_check(const GoodReductionScenario& sc);

// ----- genus 2, p = 2: Y^2 = 1 + b2 X^2 + b3 X^3 + b4 X^4 + X^5 -----

struct Genus2Scenario {
    FieldPtr K;
    TowerElem b2, b3, b4;
    DensePoly f;  // the quintic
};

Genus2Scenario make_genus2(const FieldPtr& K, const TowerElem& b2, const TowerElem& b3,
                           const TowerElem& b4);

// T_f(Y) = s_1(Y)^2 - 4 s_0(Y) s_2(Y) from the Taylor expansion of f at Y
DensePoly build_Tf(const Genus2Scenario& sc);

enum class DegenType { I, II, III };

struct ClassifyResult {
    DegenType type = DegenType::III;
    bool two_singularities = false;  // residue of b3 nonzero
    bool unit_condition = false;     // 1 + b3 b2 + b3^2 b4 a unit (type I hypothesis)
    std::string evidence;
};

ClassifyResult classify_genus2(const Genus2Scenario& sc);

}  // namespace ramlab
