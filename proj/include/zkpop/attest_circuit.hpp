#pragma once
#include <zkpop/evidence.hpp>
#include <zkpop/r1cs.hpp>
#include <zkpop/sha256_gadget.hpp>

#include <span>
#include <vector>

namespace zkpop {

// The per-checkpoint attestation circuit.  One satisfied instance proves, for
// a single checkpoint, that
//   C1: the committed work chain is genuine at every sampled position — the
//       positions are recomputed in-circuit from the public root, and for
//       each one the link SHA256(s_{j-1}) = s_j is verified with Merkle
//       openings of both states against the root;
//   C2: every behavioral feature lies inside the population window
//       mu_j +/- mult * sigma_j (clipped to the 16-bit feature domain);
//   C3: the private timestamps are at least d_min apart;
//   C4: the public checkpoint hash h_i re-derives from h_{i-1}, the content
//       delta, and the Pedersen commitment to the features, with the
//       commitment itself recomputed in-circuit from its opening.
// The circuit covers exactly one checkpoint; a session is proved as n
// independent instances.

struct CircuitConfig {
    u32 m = 12;               // feature count
    u32 k = 2;                // sampled chain links per checkpoint
    u32 n_bits = 16;          // feature range width (fixed by the encoding)
    u32 bounds_mult = 3;      // window half-width in sigmas
    u32 chain_length = 4096;  // N; power of two so sampled slots are bit slices
    double feature_min_ms = 0.0;
    double feature_max_ms = 1000.0;
    u64 d_min_ms = 25000;  // minimum gap between consecutive checkpoints

    void validate() const;  // throws std::invalid_argument
    u32 depth() const;      // log2(chain_length)
};

// 16-bit fixed point over [0, 1000] ms: scalar = round(ms * 65535 / 1000),
// ties to even.  Out-of-domain values throw std::out_of_range.
u32 encode_fixed_point(double value_ms);
double decode_fixed_point(u32 scalar);

// Public side of one instance.  Serialization order is normative:
// h_{i-1}, h_i, R_i, d_i, mu_1..mu_m, sigma_1..sigma_m — digests as two
// 128-bit little-endian limbs (low first), d_i in whole seconds, mu/sigma
// fixed-point encoded.  d_i is carried (and therefore signed by the proof)
// but participates in no constraint; duration consistency is checked against
// the public checkpoint timestamps when the transcript is validated.
struct PublicInputs {
    Fr h_prev_lo, h_prev_hi;  // h_{i-1}
    Fr h_lo, h_hi;            // h_i
    Fr swf_root;              // R_i
    Fr duration_s;            // d_i
    std::vector<Fr> mu, sigma;

    std::vector<Fr> to_vector() const;
    static PublicInputs from_checkpoint(const Checkpoint& cp, std::span<const u32> mu_fp,
                                        std::span<const u32> sigma_fp);
};

// Witness for one sampled link.  prev_state is s_{j-1} — or s_0 when j = 1,
// in which case prev_path is unused padding (the previous-state Merkle check
// is waived in-circuit for the first position, where no leaf exists).
struct SampleWitness {
    Digest prev_state{};
    std::vector<Fr> prev_path;  // sibling values, leaf level first
    std::vector<Fr> cur_path;
};

struct PrivateWitness {
    std::vector<u32> features;  // m fixed-point scalars
    Fl r_agg;                   // aggregate commitment randomness
    Digest content_delta{};
    u64 tau_ms = 0;       // tau_i
    u64 tau_prev_ms = 0;  // tau_{i-1} (0 at session start)
    std::vector<SampleWitness> samples;

    // Assembles the witness from prover-side evidence; the sampled positions
    // and paths are derived from the committed chain itself.
    static PrivateWitness from_evidence(const CircuitConfig& cfg, const SWFChain& chain,
                                        const SWFCommitment& swf, const Checkpoint& cp,
                                        u64 tau_prev_ms);
};

struct ConstraintReport {
    u64 c1 = 0, c2 = 0, c3 = 0, c4 = 0;
    u64 total = 0;
    u64 num_vars = 0;
    u64 num_public = 0;
};

// Synthesizes the full instance into cs (public wires first, in the normative
// order) and returns the per-family row counts.  Pure in the circuit
// structure: any two witnesses of matching shape produce identical
// constraints.  Throws std::invalid_argument on shape mismatches.
ConstraintReport synthesize_attest(ConstraintSystem& cs, const CircuitConfig& cfg,
                                   const PublicInputs& pub, const PrivateWitness& wit);

// Synthesis over the all-zero instance of matching shape.  Only the
// structure matters here: counting and key generation both use it.
ConstraintReport synthesize_shape(ConstraintSystem& cs, const CircuitConfig& cfg);

// Counts for a config, via synthesis over an all-zero instance.
ConstraintReport constraint_count(const CircuitConfig& cfg);

// --- building-block gadgets (exposed for direct testing and reuse) ---

// Width-3 Poseidon compression over linear combinations; mirrors poseidon2.
LinComb poseidon2_gadget(ConstraintSystem& cs, const LinComb& a, const LinComb& b);

// Enforces that boolean wires `bits` (least significant first) recompose, as
// an integer, to a value <= bound.
void enforce_le_const(ConstraintSystem& cs, std::span<const u32> bits, const Limbs& bound);

// Strict field decomposition: 254 boolean wires recomposing to x, plus the
// integer comparison against the modulus that excludes the one wrapped
// representation.  The returned bits are the canonical integer, so bit
// slices of them (sampled slots, serialized bytes) are well defined.
std::vector<u32> decompose_canonical(ConstraintSystem& cs, const LinComb& x);

// In-circuit Pedersen commitment g^value h^r over the embedded curve,
// returned as its 256-bit serialization (y little-endian, top bit = parity
// of x) so it can feed the checkpoint hash.  `value` must fit value_bits.
BitVec pedersen_serialized_gadget(ConstraintSystem& cs, const LinComb& value, u32 value_bits,
                                  const Fl& randomness,
                                  const CommitmentParams& params = CommitmentParams::standard());

}  // namespace zkpop
