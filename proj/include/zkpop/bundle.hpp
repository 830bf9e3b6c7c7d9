#pragma once
#include <zkpop/bulletproof.hpp>
#include <zkpop/groth16.hpp>
#include <zkpop/transcript.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zkpop {

// The proof side of a session: one attestation per checkpoint, each carrying
// the core proof, the public inputs it signs, and the attached range proofs.
// The bundle lives in its own file next to the transcript; the circuit
// digest in its header refuses verification under mismatched parameters
// before any pairing work happens.
//
// Serialized layout: "ZKPB" | version u32 | circuit digest 32 | proof count
// u32, then one frame per attestation — byte length u32, then inside it:
// checkpoint index u32; public input count u32, count x 32 canonical field
// bytes; core proof length u32 (= 128), proof bytes; range proof count u32,
// each as n_bits u32 | values u32 | payload length u32 | payload.

struct AttestationProof {
    u32 checkpoint_index = 0;  // matches the transcript record's index
    std::vector<Fr> public_inputs;
    Proof proof;
    // [0] = aggregated window floor proof, [1] = spacing delta proof
    std::vector<RangeProof> range_proofs;
};

struct ProofBundle {
    Digest circuit_digest{};
    std::vector<AttestationProof> proofs;  // ascending checkpoint order
};

std::vector<u8> bundle_serialize(const ProofBundle& b);
// Strict reader: rejects truncation, trailing bytes, frame-length
// mismatches, non-canonical scalars, and malformed core proofs.
std::optional<ProofBundle> bundle_deserialize(std::span<const u8> bytes);

// ----------------------------------------------------------------- attest --

// Prover-side description of one checkpoint window: when it closed (ms since
// session start, strictly increasing, first gap measured from 0), what
// content it bound, and the extracted behavioral features in milliseconds.
struct CheckpointPlan {
    u64 timestamp_ms = 0;
    Digest content_delta{};
    std::vector<double> features_ms;
};

struct SessionArtifacts {
    SessionTranscript transcript;
    ProofBundle bundle;
};

// Runs the whole prover pipeline: derives one work chain per checkpoint from
// session_seed, builds the hash-chained records, proves every checkpoint
// (concurrently; output order is by index), and attaches window and spacing
// range proofs.  Throws std::invalid_argument with the checkpoint index and
// feature named when a plan is out of domain: empty plan list, feature
// outside the encoding range, non-increasing timestamps, or a gap outside
// [d_min, d_max].  rng_seed makes every proof and blinding deterministic;
// empty draws fresh randomness.
SessionArtifacts attest_session(std::span<const u8> session_seed,
                                const std::array<u8, 32>& session_nonce,
                                const SessionParams& params, const SWFParams& swf_params,
                                std::span<const CheckpointPlan> plans,
                                const SetupArtifacts& setup, std::span<const u8> rng_seed = {});

// ----------------------------------------------------------------- verify --

struct CheckpointVerdict {
    u32 index = 0;
    bool public_inputs_ok = false;  // bundle's stored inputs match the transcript
    bool proof_ok = false;          // core proof verifies the reconstructed statement
    bool windows_ok = false;        // aggregated window floor proof verifies
    bool spacing_ok = false;        // delta proof verifies on T_i / T_{i-1}

    bool accepted() const { return public_inputs_ok && proof_ok && windows_ok && spacing_ok; }
};

struct SessionReport {
    bool accept = false;
    std::vector<std::string> problems;  // structural / session-level defects
    std::vector<CheckpointVerdict> checkpoints;
};

// Full session verification: structural transcript validation, circuit
// digest agreement, then per-checkpoint statements reconstructed from the
// transcript (the bundle's stored inputs are cross-checked, never trusted).
// batch mode verifies all core proofs in one multi-pairing seeded by the
// transcript digest and falls back to sequential verification only to
// attribute a failure, so its verdicts always equal sequential ones.
// Structural defects stop before any pairing work.
SessionReport verify_session(const SessionTranscript& t, const ProofBundle& b,
                             const VerifierArtifacts& art, bool batch = false);

}  // namespace zkpop
