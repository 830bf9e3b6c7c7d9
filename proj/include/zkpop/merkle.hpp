#pragma once
#include <zkpop/poseidon.hpp>

#include <span>
#include <vector>

namespace zkpop {

// Binary Poseidon Merkle tree over digest leaves.  Leaf count must be a power
// of two (the chain length is configured that way); each digest becomes one
// field element via poseidon_leaf before the tree is built.
struct MerklePath {
    u32 index = 0;
    std::vector<Fr> siblings;  // bottom-up
};

struct MerkleTree {
    std::vector<std::vector<Fr>> levels;  // levels[0] = leaf field elements

    static MerkleTree build(std::span<const Digest> leaves);
    Fr root() const { return levels.back()[0]; }
    size_t leaf_count() const { return levels.front().size(); }
    Fr leaf(u32 index) const { return levels.front()[index]; }
    MerklePath open(u32 index) const;
};

bool merkle_verify(const Fr& root, const Fr& leaf, const MerklePath& path);

}  // namespace zkpop
