#pragma once
#include <zkpop/merkle.hpp>
#include <zkpop/pedersen.hpp>
#include <zkpop/sha256.hpp>

#include <span>
#include <vector>

namespace zkpop {

// Sequential work function: a memory-hard Argon2id evaluation seeds an
// iterated SHA-256 chain, and a Poseidon Merkle tree commits to the chain
// states.  Honest generation costs real sequential time; the verifier later
// spot-checks randomly sampled links.
struct SWFParams {
    u64 memory_cost = 64ULL << 20;  // Argon2id memory, bytes
    u32 time_cost = 3;              // Argon2id passes
    u32 parallelism = 1;            // must stay 1: parallel lanes would break sequentiality
    u32 chain_length = 4096;        // SHA-256 steps per checkpoint; power of two
    std::array<u8, 16> salt{};

    void validate() const;  // throws std::invalid_argument on any violation
};

// Chain states for one checkpoint: s_0 = Argon2id(seed), s_j = SHA256(s_{j-1}).
// Only s_1..s_N enter the Merkle commitment; s_0 stays with the prover as
// witness material for the first sampled link.
struct SWFChain {
    Digest seed_state{};         // s_0
    std::vector<Digest> states;  // s_1 .. s_N
};

// Root plus the full tree, kept so sampled positions can be opened later.
struct SWFCommitment {
    Fr root;
    MerkleTree tree;
};

// Deterministic spot-check positions derived from the public root: the
// verifier recomputes them, so the prover cannot pick which links get checked.
struct SamplePlan {
    u32 k = 2;
    std::vector<u32> indices;  // 1-based chain positions, each in [1, N]
};

// One attestation checkpoint.  Fields up to `commitment` are public and
// participate in hash-chain verification; the rest is private witness
// material the prover keeps for proving and never publishes.
struct Checkpoint {
    u32 index = 0;
    Digest hash{};           // h_i = SHA256(h_{i-1} || delta_i || serialize(C_i))
    Digest prev_hash{};      // h_{i-1}
    Fr swf_root;             // R_i
    u32 duration = 0;        // d_i, seconds
    Digest content_delta{};  // delta_i
    JubAffine commitment;    // C_i: aggregate of the per-feature commitments
    std::vector<JubAffine> feature_commitments;  // per-feature, for range proofs
    JubAffine tau_commitment;  // T_i = g^{tau_i} h^{rho_i}; spacing proofs work
                               // on quotients of consecutive T values

    // private witness material
    u64 timestamp_ms = 0;        // tau_i, milliseconds since session start
    std::vector<Fl> features;    // fixed-point feature scalars
    std::vector<Fl> randomness;  // per-feature commitment randomness
    Fl tau_randomness;           // opens the timestamp commitment (delta range proofs)
};

// Derives s_0 via Argon2id with the given parameters.  Deterministic for
// fixed (seed, params); throws std::invalid_argument on bad params.
SWFChain swf_init(std::span<const u8> session_seed, const SWFParams& params);

// Appends `steps` further SHA-256 states to the chain.
void swf_extend(SWFChain& chain, u32 steps);

// Poseidon Merkle commitment over s_1..s_N.  Requires at least two states
// (and a power-of-two count, which valid params guarantee).
SWFCommitment merkle_commit(const SWFChain& chain);

// indices[l-1] = Poseidon(root, l) mod n + 1 for l = 1..k.  Sampling is with
// replacement; duplicates simply get verified twice.
SamplePlan sample_positions(const Fr& root, u32 k, u32 n);

// h_0 = SHA256("ZKPOP-GENESIS" || nonce): a fresh nonce per session keeps
// transcripts unlinkable across sessions.
Digest genesis_hash(const std::array<u8, 32>& session_nonce);

// The checkpoint binding hash: SHA-256 over exactly 96 bytes —
// prev_hash (32) || content_delta (32) || serialized commitment (32).
Digest checkpoint_hash(const Digest& prev_hash, const Digest& content_delta,
                       const JubAffine& commitment);

// Assembles a checkpoint: commits to each feature, aggregates, computes h_i,
// and stores the private opening material.  Throws std::invalid_argument if
// the feature and randomness vectors are empty or differ in length.
Checkpoint build_checkpoint(u32 index, const Digest& prev_hash, const Digest& content_delta,
                            std::span<const Fl> features, std::span<const Fl> randomness,
                            const SWFCommitment& swf, u64 timestamp_ms, u32 duration,
                            const Fl& tau_randomness,
                            const CommitmentParams& params = CommitmentParams::standard());

// Public linkage check: cp must point at expected_prev and its hash must
// recompute from its own public fields.
bool checkpoint_links(const Digest& expected_prev, const Checkpoint& cp);

}  // namespace zkpop
