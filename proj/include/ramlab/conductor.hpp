#pragma once

// Swan and conductor-exponent computation from a lower filtration profile
// plus fixed-subspace dimension data.

#include "ramlab/filtration.hpp"

namespace ramlab {

struct FixedDimTable {
    std::map<std::string, long> dims;  // subgroup label -> dim of the fixed subspace
    long genus = 0;
    unsigned ell = 3;  // metadata only: the formula never reads it

    long dim_at(const std::string& label) const;
    void validate() const;  // monotonicity is the caller's data contract; bounds checked here
};

struct LedgerLine {
    Rat from, to;  // integer range (from, to] of lower indices
    std::string label;
    Int order;
    long dim_fixed;
    Rat contribution;
};

struct ConductorReport {
    long epsilon = 0;
    Rat swan = 0;
    long f = 0;
    std::vector<LedgerLine> ledger;
};

// sw = sum_{i >= 1} |G_i|/|G_0| dim(A[l]/A[l]^{G_i}),
// eps = dim(A[l]/A[l]^{G_0}); integrality of sw is asserted
ConductorReport swan_conductor(const FiltrationProfile& lower, const FixedDimTable& dims);

// the same computation over the tame-smaller base
ConductorReport swan_after_base_change(const FiltrationProfile& lower, long tame_degree,
                                       unsigned p, const std::string& label0_new,
                                       const FixedDimTable& dims);

// good-reduction fixed dimensions: 0 at every subgroup containing the center,
// 2g = q(p-1) at the trivial subgroup
FixedDimTable fixed_dims_good_reduction(unsigned p, unsigned n);

// fixed dimensions for H in {1, Z(Q8), Q8} acting on the supersingular
// elliptic curve w^2 - w = t^3 fixing infinity: 2 g(E/H)
long fixed_dims_elliptic_q8(const std::string& label);

}  // namespace ramlab
