#pragma once

// Table-backed finite groups for the monodromy computations: Q8, SL2(F3),
// cyclic and dihedral pieces, extra-special p-groups (symplectic model for
// odd p, central products of Q8/D4 for p = 2), direct products and the
// factor-swapping extension (Q8 x Q8) : Z/2.  Orders stay <= 128, so plain
// multiplication tables with brute-force subgroup algorithms are exact and
// cheap.

#include <string>
#include <vector>

#include "ramlab/common.hpp"

namespace ramlab {

struct FiniteGroup {
    std::string name;
    int n = 0;                          // order
    std::vector<std::vector<int>> mul;  // n x n table
    int id = 0;
    std::vector<int> inv;

    int op(int a, int b) const { return mul[a][b]; }
};

// verifies all group axioms (including full associativity)
FiniteGroup group_from_table(std::string name, std::vector<std::vector<int>> table);

FiniteGroup trivial_group();
FiniteGroup cyclic_group(int m);
FiniteGroup quaternion_group();  // Q8
FiniteGroup dihedral8_group();   // D4, order 8
FiniteGroup sl2_f3();
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
// central product identifying the (order-p) centers of two groups whose
// centers are cyclic of the same prime order
FiniteGroup central_product(const FiniteGroup& a, const FiniteGroup& b);
// extra-special p-group of order p^(2n+1); for p = 2 `minus_type` selects the
// Q8 * D4 * ... * D4 family (the 2-Sylow of the one-point automorphism groups
// met here), otherwise D4 * ... * D4; for odd p the exponent-p symplectic
// model
FiniteGroup extraspecial_group(unsigned p, unsigned n, bool minus_type = true);
// (Q8 x Q8) : Z/2 with the involution swapping the factors
FiniteGroup q8q8_swap();

// accepted: "1", "Z/<m>", "Q8", "D4", "SL2F3", "Q8xQ8", "(Q8xQ8):2",
// "extraspecial(p,n)", "extraspecial(p,n,plus)"
FiniteGroup make_named(const std::string& name);

using Subgroup = std::vector<int>;  // sorted element indices

Subgroup full_subgroup(const FiniteGroup& G);
Subgroup subgroup_generated(const FiniteGroup& G, std::vector<int> gens);
Subgroup center(const FiniteGroup& G);
Subgroup derived_subgroup(const FiniteGroup& G);
// Phi(G) = D(G) G^p for a p-group (throws on non-p-groups)
Subgroup frattini_subgroup(const FiniteGroup& G);
bool is_subgroup(const FiniteGroup& G, const Subgroup& H);
bool is_normal(const FiniteGroup& G, const Subgroup& H);
bool is_abelian(const FiniteGroup& G);
int element_order(const FiniteGroup& G, int a);
// p with |G| = p^k, or 0 when |G| is not a prime power
unsigned pgroup_prime(const FiniteGroup& G);
bool is_extraspecial(const FiniteGroup& G);

FiniteGroup quotient_group(const FiniteGroup& G, const Subgroup& N);
// elementary abelian of rank r over p: abelian with every non-identity
// element of order p
bool is_elementary_abelian(const FiniteGroup& G, unsigned p, unsigned rank);
// order-8 subgroup test: nonabelian with a unique involution
bool looks_like_q8(const FiniteGroup& G, const Subgroup& H);
// the subgroup of 2-power-order elements, when it is a subgroup (unique
// 2-Sylow); empty otherwise
Subgroup unique_two_sylow(const FiniteGroup& G);

// true iff <images, Phi(G)> = G, i.e. the images generate G/Phi(G)
bool frattini_closure_surjective(const FiniteGroup& G, const std::vector<int>& images);

}  // namespace ramlab
