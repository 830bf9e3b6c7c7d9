#pragma once
#include <zkpop/ff.hpp>
#include <zkpop/sha256.hpp>

#include <span>

namespace zkpop {

// Width-3 Poseidon permutation over Fr, used as the 2-to-1 Merkle compression
// (~250 R1CS constraints per call once expressed as a circuit gadget).
//
// Parameters: alpha = 5, 8 full rounds (4 + 4) around 57 partial rounds.
// Round constants come from SHA-256 in counter mode under a fixed tag with
// rejection sampling into Fr; the MDS matrix is the Cauchy matrix
// 1/(x_i + y_j) with x = {0,1,2}, y = {3,4,5}.  Both are reproducible from
// this description alone and carry no hidden structure.
struct PoseidonParams {
    static constexpr int T = 3;
    static constexpr int R_F = 8;  // full rounds, split evenly front/back
    static constexpr int R_P = 57;

    std::array<Fr, T*(R_F + R_P)> rc;
    std::array<std::array<Fr, T>, T> mds;

    static const PoseidonParams& get();
};

void poseidon_permute(std::array<Fr, 3>& state);
Fr poseidon2(const Fr& a, const Fr& b);  // capacity 0, output lane 0

// 256-bit digest -> two 128-bit field elements (little-endian halves)
std::pair<Fr, Fr> digest_to_fields(const Digest& d);
// single field element standing in for a digest leaf
Fr poseidon_leaf(const Digest& d);

}  // namespace zkpop
