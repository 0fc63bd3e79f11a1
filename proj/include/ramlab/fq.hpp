#pragma once

// Residue-field arithmetic: F_{p^f} presented as F_p[w]/(h) for a fixed
// irreducible h, plus dense polynomial utilities over it (gcd, roots,
// irreducibility, distinct/equal-degree factorization).

#include <cstdint>
#include <vector>

#include "ramlab/common.hpp"

namespace ramlab {

class Fq {
public:
    // element: coefficient vector of length f, entries in [0, p)
    using Elem = std::vector<uint32_t>;

    Fq(unsigned p, unsigned f);

    unsigned p() const { return p_; }
    unsigned f() const { return f_; }
    // number of field elements p^f (throws if it does not fit in uint64)
    uint64_t size() const;
    // monic modulus h, degree f, coefficients h[0..f] in [0,p)
    const std::vector<uint32_t>& modulus() const { return h_; }

    Elem zero() const { return Elem(f_, 0); }
    Elem one() const;
    Elem gen() const;  // the class of w (for f = 1 this is 1)
    Elem from_int(long n) const;

    bool is_zero(const Elem& a) const;
    bool equal(const Elem& a, const Elem& b) const { return a == b; }

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem inv(const Elem& a) const;
    Elem pow(Elem a, Int e) const;

    // b with b^p = a (inverse Frobenius; always exists, unique)
    Elem frob_root(const Elem& a) const;

    // deterministic enumeration: index <-> element, index in [0, size())
    Elem from_index(uint64_t idx) const;
    uint64_t index(const Elem& a) const;

    std::string to_string(const Elem& a) const;

private:
    unsigned p_, f_;
    std::vector<uint32_t> h_;  // monic modulus, length f_+1
};

// dense polynomial over Fq; c[i] = coefficient of X^i; normalized: no
// trailing zeros (zero polynomial has empty c)
struct FqPoly {
    std::vector<Fq::Elem> c;

    bool is_zero() const { return c.empty(); }
    long degree() const { return static_cast<long>(c.size()) - 1; }
};

FqPoly fqp_make(const Fq& F, std::vector<Fq::Elem> coeffs);
FqPoly fqp_zero();
FqPoly fqp_one(const Fq& F);
FqPoly fqp_x(const Fq& F);
bool fqp_equal(const Fq& F, const FqPoly& a, const FqPoly& b);

FqPoly fqp_add(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly fqp_sub(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly fqp_mul(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly fqp_scale(const Fq& F, const FqPoly& a, const Fq::Elem& s);
// division with remainder; b nonzero
void fqp_divrem(const Fq& F, const FqPoly& a, const FqPoly& b, FqPoly& q, FqPoly& r);
FqPoly fqp_mod(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly fqp_monic(const Fq& F, const FqPoly& a);
FqPoly fqp_gcd(const Fq& F, FqPoly a, FqPoly b);
// g = gcd(a,b) = s*a + t*b
void fqp_xgcd(const Fq& F, const FqPoly& a, const FqPoly& b, FqPoly& g, FqPoly& s, FqPoly& t);
FqPoly fqp_derivative(const Fq& F, const FqPoly& a);
Fq::Elem fqp_eval(const Fq& F, const FqPoly& a, const Fq::Elem& x);
FqPoly fqp_powmod(const Fq& F, FqPoly base, Int e, const FqPoly& mod);

// all roots in F (with multiplicity 1 each; multiplicities not reported)
std::vector<Fq::Elem> fqp_roots(const Fq& F, const FqPoly& a);
bool fqp_is_irreducible(const Fq& F, const FqPoly& a);

// full factorization into monic irreducibles with multiplicities
// (squarefree + distinct-degree + deterministic equal-degree splitting)
std::vector<std::pair<FqPoly, unsigned>> fqp_factor(const Fq& F, const FqPoly& a);

std::string fqp_to_string(const Fq& F, const FqPoly& a);

}  // namespace ramlab
