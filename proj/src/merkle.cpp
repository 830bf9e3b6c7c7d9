#include <zkpop/merkle.hpp>

#include <stdexcept>

namespace zkpop {

MerkleTree MerkleTree::build(std::span<const Digest> leaves) {
    size_t n = leaves.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("merkle: leaf count must be a power of two");
    MerkleTree t;
    auto& lv = t.levels.emplace_back();
    lv.reserve(n);
    for (const auto& d : leaves) lv.push_back(poseidon_leaf(d));
    while (t.levels.back().size() > 1) {
        const auto& below = t.levels.back();
        std::vector<Fr> up(below.size() / 2);
        for (size_t i = 0; i < up.size(); i++) up[i] = poseidon2(below[2 * i], below[2 * i + 1]);
        t.levels.push_back(std::move(up));
    }
    return t;
}

MerklePath MerkleTree::open(u32 index) const {
    MerklePath p;
    p.index = index;
    u32 i = index;
    for (size_t lvl = 0; lvl + 1 < levels.size(); lvl++) {
        p.siblings.push_back(levels[lvl][i ^ 1]);
        i >>= 1;
    }
    return p;
}

bool merkle_verify(const Fr& root, const Fr& leaf, const MerklePath& path) {
    Fr cur = leaf;
    u32 i = path.index;
    for (const Fr& sib : path.siblings) {
        cur = (i & 1) ? poseidon2(sib, cur) : poseidon2(cur, sib);
        i >>= 1;
    }
    return cur == root;
}

}  // namespace zkpop
