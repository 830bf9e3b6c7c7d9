#include <zkpop/poseidon.hpp>

namespace zkpop {

const PoseidonParams& PoseidonParams::get() {
    static const PoseidonParams p = [] {
        PoseidonParams out;
        u32 ctr = 0;
        for (auto& c : out.rc) {
            for (;;) {
                Digest d = Sha256().update("zkpop/v1/poseidon/rc").update_u32(ctr++).final();
                d[31] &= 0x3f;
                if (auto v = Fr::from_bytes(d.data())) {
                    c = *v;
                    break;
                }
            }
        }
        for (int i = 0; i < T; i++)
            for (int j = 0; j < T; j++)
                out.mds[i][j] = Fr::from_u64((u64)(i + j + 3)).inv();
        return out;
    }();
    return p;
}

static Fr sbox(const Fr& x) {
    Fr x2 = x.square();
    return x2.square() * x;
}

void poseidon_permute(std::array<Fr, 3>& state) {
    const auto& P = PoseidonParams::get();
    constexpr int half = PoseidonParams::R_F / 2;
    for (int rnd = 0; rnd < PoseidonParams::R_F + PoseidonParams::R_P; rnd++) {
        for (int i = 0; i < 3; i++) state[i] = state[i] + P.rc[rnd * 3 + i];
        bool full = rnd < half || rnd >= half + PoseidonParams::R_P;
        state[0] = sbox(state[0]);
        if (full) {
            state[1] = sbox(state[1]);
            state[2] = sbox(state[2]);
        }
        std::array<Fr, 3> next;
        for (int i = 0; i < 3; i++)
            next[i] = P.mds[i][0] * state[0] + P.mds[i][1] * state[1] + P.mds[i][2] * state[2];
        state = next;
    }
}

Fr poseidon2(const Fr& a, const Fr& b) {
    std::array<Fr, 3> st = {Fr::zero(), a, b};
    poseidon_permute(st);
    return st[0];
}

std::pair<Fr, Fr> digest_to_fields(const Digest& d) {
    std::array<u8, 32> lo{}, hi{};
    std::copy(d.begin(), d.begin() + 16, lo.begin());
    std::copy(d.begin() + 16, d.end(), hi.begin());
    return {*Fr::from_bytes(lo.data()), *Fr::from_bytes(hi.data())};
}

Fr poseidon_leaf(const Digest& d) {
    auto [lo, hi] = digest_to_fields(d);
    return poseidon2(lo, hi);
}

}  // namespace zkpop
