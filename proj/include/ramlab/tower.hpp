#pragma once

// Exact arithmetic in finite extensions of Q_p presented as towers:
// an unramified base (residue-degree proxy for Q_p^ur, coefficients kept
// modulo p^N) followed by monogenic totally ramified steps.  Every step is
// defined by a monic polynomial over the field built so far together with a
// certified generator valuation a/m in pi-units of that field, gcd(a,m)=1
// (Eisenstein steps have a = 1, radical steps X^m = u*pi^j have a = j).
//
// Elements are flat coefficient tensors over the monomial basis
// w^i * g_1^{i_1} ... g_k^{i_k}, plus a global power-of-p shift and an exact
// rational "guaranteed absolute precision" in v(p)=1 units.  Because the
// generator valuations have pairwise distinct fractional parts across the
// monomial lattice, valuations are computed exactly by a minimum formula,
// never by approximation.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ramlab/common.hpp"
#include "ramlab/fq.hpp"

namespace ramlab {

class TowerField;
using FieldPtr = std::shared_ptr<const TowerField>;

struct TowerElem {
    std::shared_ptr<const TowerField> F;
    std::vector<Int> c;    // flat coords, canonical in [0, p^N), unramified innermost
    long pshift = 0;       // value = p^pshift * sum_i c[i] * monomial_i
    Rat prec = 0;          // absolute precision, v(p)=1 units: value known mod {v >= prec}
    bool exact_zero = false;

    bool valid() const { return static_cast<bool>(F); }
};

enum class StepKind { eisenstein, radical, root };

struct StepInfo {
    std::string name;
    long m = 1;             // step degree
    long val_num = 1;       // generator valuation = val_num / (m * e_parent), gcd(val_num, m) = 1
    StepKind kind = StepKind::eisenstein;
};

class TowerField : public std::enable_shared_from_this<TowerField> {
public:
    // unramified base of residue degree f_ur; N = coefficient precision
    // exponent in v(p)=1 units
    static FieldPtr make_base(unsigned p, unsigned f_ur, long N = 64);

    // X^m + c[m-1] X^{m-1} + ... + c[0], all c[i] with positive pi-valuation
    // and v_pi(c[0]) = 1
    FieldPtr extend_eisenstein(const std::vector<TowerElem>& coeffs, const std::string& name) const;
    // X^m = radicand, v_pi(radicand) = j >= 1 with gcd(m, j) = 1
    FieldPtr extend_radical(long m, const TowerElem& radicand, const std::string& name) const;
    // monic polynomial coeffs c[0..m-1] over this field whose roots have the
    // certified valuation val_num/m in pi-units of this field
    FieldPtr extend_root(const std::vector<TowerElem>& coeffs, long val_num, const std::string& name) const;

    unsigned p() const { return p_; }
    unsigned f_ur() const { return f_ur_; }
    long coeff_prec() const { return N_; }
    long e() const { return e_; }
    size_t dim() const { return dim_; }
    size_t depth() const { return chain_.size() - 1; }
    const Fq& residue_field() const { return *fq_; }
    const TowerField* parent() const { return parent_.get(); }
    FieldPtr parent_ptr() const { return parent_; }
    const StepInfo& step() const { return step_; }
    const std::vector<TowerElem>& step_coeffs() const { return step_coeffs_; }
    bool is_base() const { return parent_ == nullptr; }
    const Int& p_pow_N() const { return pN_; }
    std::string describe() const;

    TowerElem zero() const;
    TowerElem one() const;
    TowerElem from_int(const Int& n) const;
    TowerElem from_rational(const Rat& r) const;
    TowerElem from_residue(const Fq::Elem& r) const;  // naive lift
    TowerElem p_elem() const { return from_int(Int(p_)); }
    TowerElem generator() const;                    // deepest step generator
    TowerElem generator_at(size_t level) const;     // level in [1, depth]
    TowerElem generator_by_name(const std::string& name) const;
    // canonical monomial of valuation k_pi/e (any integer k_pi): a product of
    // step-generator powers times a power of p
    TowerElem monomial(long k_pi) const;
    TowerElem uniformizer() const { return monomial(1); }

    bool is_ancestor_or_self(const TowerField* other) const;
    TowerElem embed(const TowerElem& x) const;  // from an ancestor field

    // same tower rebuilt with coefficient precision N2 (<= N); elements move
    // over via truncate_to
    FieldPtr truncated(long N2) const;

    // per ramified multi-index valuation offsets, v(p)=1 units (dim/f_ur entries)
    const std::vector<Rat>& slot_vals() const { return slot_vals_; }

    // internal: exact product of coordinate tensors (no p-shift handling)
    void raw_mul(const std::vector<Int>& a, const std::vector<Int>& b, std::vector<Int>& out) const;

private:
    TowerField() = default;

    unsigned p_ = 2, f_ur_ = 1;
    long N_ = 64;
    long e_ = 1;
    size_t dim_ = 1;
    Int pN_;
    std::shared_ptr<const Fq> fq_;
    std::vector<Int> hlift_;  // lifted residue modulus, length f_ur+1
    FieldPtr parent_;
    StepInfo step_;
    std::vector<TowerElem> step_coeffs_;           // parent elements, integral
    std::vector<std::vector<Int>> red_rows_;       // coords of g^m .. g^{2m-2}
    std::vector<Rat> slot_vals_;
    std::vector<const TowerField*> chain_;         // base-first, this last
    std::vector<size_t> dims_chain_;               // dims_chain_[k] = dim at level k

    FieldPtr extend_impl(std::vector<TowerElem> coeffs, long val_num, StepKind kind,
                         const std::string& name) const;
    void init_tables();
    TowerElem generator_pow_small(long t) const;   // g^t for 0 <= t < m
    void mul_rec(size_t lvl, const Int* a, const Int* b, Int* out, std::vector<Int>& ws,
                 const std::vector<size_t>& ws_off) const;
};

// bring coords to canonical form: common p-power into pshift, coords mod p^N,
// precision clamped to the representable range
void normalize(TowerElem& x);

// ----- element operations (operands must share a field) -----
TowerElem add(const TowerElem& a, const TowerElem& b);
TowerElem sub(const TowerElem& a, const TowerElem& b);
TowerElem neg(const TowerElem& a);
TowerElem mul(const TowerElem& a, const TowerElem& b);
TowerElem mul_int(const TowerElem& a, const Int& n);
TowerElem inv(const TowerElem& a);
TowerElem div(const TowerElem& a, const TowerElem& b);
TowerElem pow_i(TowerElem a, long n);

// exact valuation in v(p)=1 units; nullopt when the element is
// indistinguishable from 0 at its precision (or exactly 0)
std::optional<Rat> valuation(const TowerElem& a);
Rat valuation_or_throw(const TowerElem& a);
std::optional<Rat> valuation_pi(const TowerElem& a);  // pi-units of a.F
bool is_zero_at_precision(const TowerElem& a);
bool equal_at_precision(const TowerElem& a, const TowerElem& b);

// image in the residue field; requires v(a) >= 0
Fq::Elem residue(const TowerElem& a);

// move an element to the truncated clone F2 of its field
TowerElem truncate_to(const TowerElem& a, const FieldPtr& F2);

std::string to_string(const TowerElem& a);

}  // namespace ramlab
