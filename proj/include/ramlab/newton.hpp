#pragma once

// Newton polygons with residual polynomials, quadratic Hensel lifting along
// coprime residual splits, irreducibility certificates, root finding by
// digit descent, and characteristic-polynomial / resultant machinery via
// multiplication matrices (Gaussian determinants + interpolation at
// unit-difference nodes).

#include <optional>

#include "ramlab/poly.hpp"

namespace ramlab {

struct PolygonSegment {
    Rat root_val_pi;  // common valuation of this segment's roots, pi-units (a/b lowest terms)
    long length;      // number of roots (horizontal length)
    FqPoly residual;  // residual polynomial over the residue field, degree = length/b
};

struct NewtonPolygon {
    long vanishing_order = 0;                     // multiplicity of the root 0
    std::vector<std::pair<long, Rat>> vertices;   // (index, v_pi(coeff)) on the lower hull
    std::vector<PolygonSegment> segments;         // root valuations strictly decreasing

    long total_length() const {
        long s = 0;
        for (const auto& seg : segments) s += seg.length;
        return s;
    }
};

// lower convex hull of (i, v_pi(c_i)); throws PrecisionError when a
// coefficient indistinguishable from 0 could change the hull or a residual
NewtonPolygon newton_polygon(const DensePoly& f);

struct IrreducibilityCertificate {
    enum class Verdict { irreducible, reducible, inconclusive };
    enum class Reason { single_slope_denominator, residual_irreducible, hensel_split, root_witness, none };
    Verdict verdict = Verdict::inconclusive;
    Reason reason = Reason::none;
    std::string detail;
    // true when the certificate relies on irreducibility over the finite
    // residue proxy (honest only for finite-residue ground fields)
    bool proxy_grade = false;
};

IrreducibilityCertificate certify_irreducible(const DensePoly& f);

struct CannotSplitError : DomainError {
    explicit CannotSplitError(const std::string& msg) : DomainError("cannot split: " + msg) {}
};

// factor f along polygon vertices and coprime residual splits; factors
// multiply back to f to the working precision. Throws CannotSplitError when
// no such split exists, PrecisionError when undecidable.
std::vector<DensePoly> hensel_split(const DensePoly& f);

// lift the coprime residue factorization fbar = gbar * hbar of an integral
// polynomial with unit leading coefficient reduction on the gbar side
std::pair<DensePoly, DensePoly> hensel_lift_pair(const DensePoly& f, const FqPoly& gbar,
                                                 const FqPoly& hbar);

// all roots of f lying in its coefficient field, found by digit descent +
// Newton refinement; `inconclusive` is set when a cluster could not be
// resolved within the depth cap
struct RootSearchResult {
    std::vector<TowerElem> roots;
    bool inconclusive = false;
    std::vector<std::string> notes;  // terminal evidence per unresolved cluster
};
RootSearchResult roots_in_field(const DensePoly& f, int depth_cap = 24);

// ----- multiplication-matrix machinery over F[Y]/(T), T monic -----

// determinant by Gaussian elimination with minimum-valuation pivoting
TowerElem det_gauss(std::vector<std::vector<TowerElem>> M);

// characteristic polynomial of multiplication by g on F[Y]/(T)
DensePoly charpoly_mod(const DensePoly& T, const DensePoly& g);

// resultant Res(T, g) = prod g(y_i) over the roots of monic T
TowerElem resultant_monic(const DensePoly& T, const DensePoly& g);

// discriminant of monic T
TowerElem discriminant_monic(const DensePoly& T);

// extend the coefficient field by a root of f when a shift of f is certified
// by a single segment of slope denominator = degree; returns the extension
// and the embedded root. Throws DomainError when no certificate applies.
std::pair<FieldPtr, TowerElem> extend_by_root(const DensePoly& f, const std::string& name,
                                              int shift_cap = 8);

// realize the field generated by a root of T (monic, expected totally
// ramified over the coefficient field) even when no direct slope certificate
// exists: a primitive-element candidate g in K[Y]/(T) is refined by unit
// shifts and g -> g^b mu(-a) - (residue lift) until its characteristic
// polynomial has a single slope of denominator deg T.  Returns the certified
// step polynomial, the extension, and all roots of T found in it.
struct RootFieldResult {
    FieldPtr L;
    DensePoly W;                   // certified defining polynomial of L over K
    DensePoly primitive;           // the generator of L as a polynomial in a root of T
    std::vector<TowerElem> roots;  // roots of T in L
    int refinements = 0;
};
RootFieldResult certified_root_field(const DensePoly& T, const std::string& name, int rounds = 40);

}  // namespace ramlab
