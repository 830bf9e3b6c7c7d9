#pragma once
// Optimal ate pairing on BN254. The Miller loop runs over NAF(6x+2) with
// affine twist-point arithmetic; slope denominators across all input pairs
// are inverted in one batch per step, so multi-pair products (the common
// case in proof verification) pay one field inversion per iteration.

#include <zkpop/bn254.hpp>
#include <zkpop/fp_tower.hpp>

#include <vector>

namespace zkpop {

// product of Miller loop values for the given pairs (identity pairs skipped)
Fp12 miller_product(const std::vector<std::pair<G1Affine, G2Affine>>& pairs);

Fp12 final_exponentiation(const Fp12& f);

// e(P, Q)
Fp12 pairing(const G1Affine& p, const G2Affine& q);

// true iff prod e(P_i, Q_i) == 1
bool pairing_product_is_one(const std::vector<std::pair<G1Affine, G2Affine>>& pairs);

}  // namespace zkpop
