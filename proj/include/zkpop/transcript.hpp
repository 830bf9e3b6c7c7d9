#pragma once
#include <zkpop/attest_circuit.hpp>
#include <zkpop/evidence.hpp>
#include <zkpop/privacy.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zkpop {

// The session transcript: the ordered public checkpoint records plus the
// session-wide parameters a verifier needs to reconstruct every statement.
// It is the artifact the prover publishes alongside the proof bundle; no
// private witness material (timestamps, features, openings) ever enters it.
//
// Serialized layout (all integers little-endian, digests and points raw
// 32-byte encodings):
//
//   header   "ZKPT" | version u32 | session_nonce 32
//            | circuit: m u32, k u32, n_bits u32, bounds_mult u32,
//              chain_length u32, feature_min_ms f64, feature_max_ms f64,
//              d_min_ms u64
//            | d_max_ms u64
//            | population: count u32 (= m), then count x (mu_fp u32,
//              sigma_fp u32)
//            | poseidon record: t u32, alpha u32, full_rounds u32,
//              partial_rounds u32, parameter digest 32
//            | claimed_duration_s u64 | checkpoint count u32
//   records  one frame per checkpoint: byte length u32, then exactly
//            204 + 32 m bytes:
//              index u32 | prev_hash 32 | content_delta 32 | commitment 32
//              | hash 32 | swf_root 32 | duration_s u32
//              | tau_commitment 32 | feature count u32 (= m) | m x 32
//
// The layout is normative: bytes 4..100 of a record frame are, verbatim,
// the 96-byte preimage of the checkpoint hash (prev_hash || content_delta
// || commitment), so there is exactly one byte string a record can carry
// for a given h_i.

// Session-wide public parameters: the circuit configuration shared with the
// proving key, the spacing upper bound (the lower bound lives in the
// circuit), and the population calibration in fixed-point form.
struct SessionParams {
    CircuitConfig circuit;
    u64 d_max_ms = 120000;           // spacing upper bound, enforced by delta proofs
    std::vector<u32> mu_fp, sigma_fp;  // per-feature window centers / widths

    void validate() const;  // throws std::invalid_argument

    // Window floors for the range proofs: max(0, mu - mult*sigma) per
    // feature, saturating at the domain edge exactly like the circuit does.
    std::vector<u32> window_floors() const;

    // Bridges a calibration release: encodes mu/sigma to fixed point.
    static SessionParams from_population(const CircuitConfig& circuit,
                                         const PopulationParams& pop, u64 d_max_ms = 120000);
};

// Public slice of one checkpoint.  duration_s is the claimed drafting time
// of this checkpoint's window in whole seconds; validation bounds it by the
// spacing interval and the header binds the session total to the sum.
struct CheckpointRecord {
    u32 index = 0;  // 1-based position in the session
    Digest hash{};
    Digest prev_hash{};
    Fr swf_root;
    u32 duration_s = 0;
    Digest content_delta{};
    JubAffine commitment;
    JubAffine tau_commitment;
    std::vector<JubAffine> feature_commitments;
};

// The hash parameterization in force when the transcript was produced.
// Recorded so a verifier with a different build refuses loudly instead of
// recomputing different roots.
struct PoseidonRecord {
    u32 t = 0, alpha = 0, full_rounds = 0, partial_rounds = 0;
    Digest digest{};  // hash over the round constants and MDS matrix

    static PoseidonRecord current();
    bool operator==(const PoseidonRecord&) const = default;
};

struct SessionTranscript {
    std::array<u8, 32> session_nonce{};  // genesis input; fresh per session
    SessionParams params;
    PoseidonRecord poseidon;
    u64 claimed_duration_s = 0;  // must equal the sum of record durations
    std::vector<CheckpointRecord> records;
};

// Strips a checkpoint to its public record.
CheckpointRecord public_record(const Checkpoint& cp);

// One structural defect found during validation.  checkpoint is the record's
// 1-based index, or 0 for session-level findings.
struct TranscriptFinding {
    u32 checkpoint = 0;
    std::string what;
};

// Structural validation, no proofs involved: parameter sanity, hash-chain
// linkage back to the genesis of session_nonce, recomputation of every h_i
// from its own record bytes, aggregate-commitment consistency, subgroup
// membership of every point, duration bounds and the claimed-total binding.
// Returns every defect found (empty means structurally valid); substituting
// any single checkpoint record breaks linkage at that index.
std::vector<TranscriptFinding> validate_transcript(const SessionTranscript& t);

// The m + 12 public field elements of checkpoint `rec` in the normative
// order, reconstructed from the transcript alone.
PublicInputs record_public_inputs(const CheckpointRecord& rec, const SessionParams& params);

std::vector<u8> transcript_serialize(const SessionTranscript& t);
// Strict reader: rejects bad magic/version, truncation, trailing bytes,
// length-prefix mismatches, non-canonical field elements, and off-curve
// points.  Structural validity beyond parsing is validate_transcript's job.
std::optional<SessionTranscript> transcript_deserialize(std::span<const u8> bytes);

// SHA-256 over the serialized transcript; names the session in manifests
// and seeds batch-verification coefficients.
Digest transcript_digest(const SessionTranscript& t);

}  // namespace zkpop
