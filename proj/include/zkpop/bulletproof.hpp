#pragma once
#include <zkpop/pedersen.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace zkpop {

// Logarithmic-size range proofs over Pedersen commitments on the embedded
// curve, no trusted setup.  The core statement is aggregated: all committed
// values v_j lie in [0, 2^n).  Two wrappers shape it for the protocol:
//
//  - window proofs certify f_j - a_j in [0, 2^16) against the public lower
//    window bounds a_j, one aggregated proof for all features of a
//    checkpoint (the upper side of the window is enforced in-circuit);
//  - delta proofs certify d_min <= delta <= d_max for a commitment to the
//    time difference between consecutive checkpoints, as a two-value
//    aggregate over the shifted commitments C_delta / g^{d_min} and
//    g^{d_max} / C_delta at 32 bits.
//
// Proof payloads hold only group elements and scalars:
// (9 + 2 log2(bit_ceil(m) * n)) * 32 bytes — 800 bytes for twelve 16-bit
// features, constant in the committed values.

struct RangeProof {
    u32 n_bits = 0;
    u32 values = 0;         // committed values covered, before padding
    std::vector<u8> bytes;  // opaque payload: points and scalars only
};

// Largest supported aggregate width bit_ceil(m) * n_bits (generator vectors
// are derived once up to this size).
constexpr u32 RANGE_MAX_WIDTH = 512;

// Aggregated proof that every opening commits to a value in [0, 2^n_bits).
// Throws std::invalid_argument on an out-of-range value, an opening that
// does not match its commitment point, an empty list, or an unsupported
// width; an out-of-range opening never yields a proof.  rng_seed makes the
// blinding deterministic; empty draws fresh randomness.
RangeProof range_prove(std::span<const FeatureCommitment> openings, u32 n_bits,
                       const CommitmentParams& params = CommitmentParams::standard(),
                       std::span<const u8> rng_seed = {});

// True iff the proof certifies that each commitment holds a value in
// [0, 2^n_bits).  Malformed bytes, wrong shape, and off-subgroup points all
// return false; nothing throws on untrusted input.
bool range_verify(std::span<const JubAffine> commitments, u32 n_bits, const RangeProof& proof,
                  const CommitmentParams& params = CommitmentParams::standard());

// --- protocol wrappers ---------------------------------------------------

// One aggregated proof that every feature commitment opens to a value at or
// above its window floor: f_j - lower_j in [0, 2^16).  lower_j are the
// public mu_j - mult*sigma_j floors, clipped to the feature domain.
RangeProof window_range_prove(std::span<const FeatureCommitment> features,
                              std::span<const u32> lower,
                              const CommitmentParams& params = CommitmentParams::standard(),
                              std::span<const u8> rng_seed = {});
bool window_range_verify(std::span<const JubAffine> commitments, std::span<const u32> lower,
                         const RangeProof& proof,
                         const CommitmentParams& params = CommitmentParams::standard());

// Two-sided spacing proof over a delta commitment g^{delta} h^{r}: verifies
// iff d_min <= delta <= d_max (bounds inclusive, milliseconds).  The prover
// supplies the opening; d_max - d_min must fit 32 bits.
RangeProof delta_range_prove(u64 delta_ms, const Fl& randomness, u64 d_min_ms, u64 d_max_ms,
                             const CommitmentParams& params = CommitmentParams::standard(),
                             std::span<const u8> rng_seed = {});
bool delta_range_verify(const JubAffine& c_delta, u64 d_min_ms, u64 d_max_ms,
                        const RangeProof& proof,
                        const CommitmentParams& params = CommitmentParams::standard());

}  // namespace zkpop
