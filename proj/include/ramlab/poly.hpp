#pragma once

// Dense polynomials over a TowerField.

#include <vector>

#include "ramlab/tower.hpp"

namespace ramlab {

struct DensePoly {
    FieldPtr F;
    std::vector<TowerElem> c;  // c[i] = coefficient of X^i; trailing exact zeros trimmed

    long degree() const { return static_cast<long>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const TowerElem& lc() const { return c.back(); }
};

DensePoly poly_make(FieldPtr F, std::vector<TowerElem> coeffs);
DensePoly poly_zero(FieldPtr F);
DensePoly poly_one(FieldPtr F);
DensePoly poly_x(FieldPtr F);
// from small integer coefficients, index = degree
DensePoly poly_from_ints(FieldPtr F, const std::vector<long>& coeffs);

DensePoly poly_add(const DensePoly& a, const DensePoly& b);
DensePoly poly_sub(const DensePoly& a, const DensePoly& b);
DensePoly poly_neg(const DensePoly& a);
DensePoly poly_mul(const DensePoly& a, const DensePoly& b);
DensePoly poly_scale(const DensePoly& a, const TowerElem& s);
// q, r with a = q*b + r, deg r < deg b; b monic
void poly_divrem_monic(const DensePoly& a, const DensePoly& b, DensePoly& q, DensePoly& r);
DensePoly poly_mod_monic(const DensePoly& a, const DensePoly& b);
DensePoly poly_derivative(const DensePoly& a);
TowerElem poly_eval(const DensePoly& a, const TowerElem& x);
// f(X + s)
DensePoly poly_taylor_shift(const DensePoly& a, const TowerElem& s);
// f(s X)
DensePoly poly_scale_x(const DensePoly& a, const TowerElem& s);
DensePoly poly_monicize(const DensePoly& a);  // divide by leading coefficient

// embed a polynomial over an ancestor field into a larger tower
DensePoly poly_embed(const DensePoly& a, const FieldPtr& L);

// true when every coefficient of a-b is indistinguishable from 0
bool poly_equal_at_precision(const DensePoly& a, const DensePoly& b);
// min over coefficients of the valuation lower bound, pi-units
Rat poly_min_val_pi(const DensePoly& a);

std::string poly_to_string(const DensePoly& a);

}  // namespace ramlab
