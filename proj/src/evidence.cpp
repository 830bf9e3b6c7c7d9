#include <zkpop/evidence.hpp>

#include <sodium.h>

#include <stdexcept>

namespace zkpop {

static_assert(crypto_pwhash_SALTBYTES == 16, "salt field sized for crypto_pwhash");

void SWFParams::validate() const {
    if (memory_cost < 8ULL << 20) throw std::invalid_argument("swf: memory_cost below 8 MiB");
    if (time_cost < 1) throw std::invalid_argument("swf: time_cost must be at least 1");
    if (parallelism != 1) throw std::invalid_argument("swf: parallelism must be 1");
    if (chain_length < 2 || (chain_length & (chain_length - 1)) != 0)
        throw std::invalid_argument("swf: chain_length must be a power of two >= 2");
}

SWFChain swf_init(std::span<const u8> session_seed, const SWFParams& params) {
    params.validate();
    if (sodium_init() < 0) throw std::runtime_error("libsodium initialization failed");
    SWFChain chain;
    if (crypto_pwhash(chain.seed_state.data(), chain.seed_state.size(),
                      reinterpret_cast<const char*>(session_seed.data()), session_seed.size(),
                      params.salt.data(), params.time_cost, params.memory_cost,
                      crypto_pwhash_ALG_ARGON2ID13) != 0)
        throw std::runtime_error("Argon2id derivation failed (insufficient memory?)");
    return chain;
}

void swf_extend(SWFChain& chain, u32 steps) {
    if (steps < 1) throw std::invalid_argument("swf_extend: need at least one step");
    chain.states.reserve(chain.states.size() + steps);
    const Digest* prev = chain.states.empty() ? &chain.seed_state : &chain.states.back();
    for (u32 i = 0; i < steps; i++) {
        chain.states.push_back(sha256(*prev));
        prev = &chain.states.back();
    }
}

SWFCommitment merkle_commit(const SWFChain& chain) {
    if (chain.states.size() < 2)
        throw std::invalid_argument("merkle_commit: chain needs at least two states");
    SWFCommitment out{Fr::zero(), MerkleTree::build(chain.states)};
    out.root = out.tree.root();
    return out;
}

// canonical integer of the field element mod n
static u64 fr_mod(const Fr& e, u64 n) {
    Limbs v = e.to_limbs();
    u64 rem = 0;
    for (int i = 3; i >= 0; i--) rem = (u64)((((u128)rem << 64) | v[i]) % n);
    return rem;
}

SamplePlan sample_positions(const Fr& root, u32 k, u32 n) {
    if (k < 1 || k > n) throw std::invalid_argument("sample_positions: need 1 <= k <= n");
    SamplePlan plan{k, {}};
    plan.indices.reserve(k);
    for (u32 l = 1; l <= k; l++)
        plan.indices.push_back((u32)fr_mod(poseidon2(root, Fr::from_u64(l)), n) + 1);
    return plan;
}

Digest genesis_hash(const std::array<u8, 32>& session_nonce) {
    return Sha256().update("ZKPOP-GENESIS").update(session_nonce).final();
}

Digest checkpoint_hash(const Digest& prev_hash, const Digest& content_delta,
                       const JubAffine& commitment) {
    return Sha256()
        .update(prev_hash)
        .update(content_delta)
        .update(jub_serialize(commitment))
        .final();
}

Checkpoint build_checkpoint(u32 index, const Digest& prev_hash, const Digest& content_delta,
                            std::span<const Fl> features, std::span<const Fl> randomness,
                            const SWFCommitment& swf, u64 timestamp_ms, u32 duration,
                            const Fl& tau_randomness, const CommitmentParams& params) {
    if (features.empty() || features.size() != randomness.size())
        throw std::invalid_argument(
            "build_checkpoint: feature and randomness vectors must be nonempty and equal length");
    Checkpoint cp;
    cp.index = index;
    cp.prev_hash = prev_hash;
    cp.content_delta = content_delta;
    cp.swf_root = swf.root;
    cp.duration = duration;
    cp.feature_commitments.reserve(features.size());
    for (size_t j = 0; j < features.size(); j++)
        cp.feature_commitments.push_back(pedersen_commit(features[j], randomness[j], params));
    cp.commitment = pedersen_aggregate(cp.feature_commitments);
    cp.hash = checkpoint_hash(prev_hash, content_delta, cp.commitment);
    cp.tau_commitment = pedersen_commit(Fl::from_u64(timestamp_ms), tau_randomness, params);
    cp.timestamp_ms = timestamp_ms;
    cp.features.assign(features.begin(), features.end());
    cp.randomness.assign(randomness.begin(), randomness.end());
    cp.tau_randomness = tau_randomness;
    return cp;
}

bool checkpoint_links(const Digest& expected_prev, const Checkpoint& cp) {
    return cp.prev_hash == expected_prev &&
           cp.hash == checkpoint_hash(cp.prev_hash, cp.content_delta, cp.commitment);
}

}  // namespace zkpop
