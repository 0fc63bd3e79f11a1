#pragma once

// Coefficient expression mini-grammar over a tower, and the declarative
// tower builder.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ['-'] atom ['^' exponent]
//   atom   := integer | 'p' | generator-name | '(' expr ')'
//   exponent := ['-'] integer | '(' ['-'] integer ['/' integer] ')'
//
// A rational exponent a/b is resolvable only on p or on an integer that is,
// up to sign, a power of p; it denotes the canonical tower monomial of
// valuation (a/b) * v(base) (e.g. "2^(3/5)" is g^9 in the tower g^15 = 2).

#include <variant>

#include "ramlab/tower.hpp"

namespace ramlab {

TowerElem parse_element(const FieldPtr& F, const std::string& text);

struct RadicalStepSpec {
    long m = 0;
    std::string radicand;  // expression over the tower built so far
    std::string name;
};

struct EisensteinStepSpec {
    std::vector<std::string> coeffs;  // c_0 .. c_{m-1}, expressions
    std::string name;
};

using StepSpec = std::variant<RadicalStepSpec, EisensteinStepSpec>;

struct TowerSpec {
    unsigned p = 2;
    unsigned f_ur = 8;
    long precision = 64;  // coefficient precision exponent, v(p)=1 units
    std::vector<StepSpec> steps;
};

FieldPtr build_tower(const TowerSpec& spec);

}  // namespace ramlab
