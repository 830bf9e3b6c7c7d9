#pragma once
#include <zkpop/attest_circuit.hpp>
#include <zkpop/bn254.hpp>

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace zkpop {

// Pairing-based proving backend: trusted setup over a synthesized constraint
// system, constant-size proofs, single and batch verification.  The seeded
// setup is deterministic and exists for reproducible tests and CI; whoever
// knows the seed can forge proofs, so production deployments must import
// parameters from a multi-party ceremony instead (production mode refuses
// the seeded path outright).

struct ProvingKey {
    G1Affine alpha1, beta1, delta1;
    G2Affine beta2, delta2;
    u32 num_public = 0;
    std::vector<G1Affine> a_query;   // per wire, A-side polynomial at tau
    std::vector<G1Affine> b1_query;  // per wire, B-side at tau, in G1
    std::vector<G2Affine> b2_query;  // per wire, B-side at tau, in G2
    std::vector<G1Affine> l_query;   // private wires, combined column / delta
    std::vector<G1Affine> h_query;   // powers of tau times the vanishing poly / delta
};

struct VerifyingKey {
    G1Affine alpha1;
    G2Affine beta2, gamma2, delta2;
    std::vector<G1Affine> ic;  // public wires (constant wire first), column / gamma
};

struct SetupArtifacts {
    std::string curve = "BN254";
    Digest circuit_digest{};
    ProvingKey pk;
    VerifyingKey vk;
};

// verifier-side slice of the artifacts (what the vk file carries)
struct VerifierArtifacts {
    std::string curve = "BN254";
    Digest circuit_digest{};
    VerifyingKey vk;
};

struct Proof {
    G1Affine a;
    G2Affine b;
    G1Affine c;
};

// compressed: 32 (G1) + 64 (G2) + 32 (G1); constant for a fixed curve
constexpr size_t PROOF_BYTES = 128;

std::array<u8, PROOF_BYTES> proof_serialize(const Proof& p);
// curve and subgroup membership checked; anything malformed -> nullopt
std::optional<Proof> proof_deserialize(std::span<const u8> bytes);

// Binds parameter files and proof bundles to one circuit: a hash over the
// configuration knobs and the synthesized constraint structure.
Digest attestation_circuit_digest(const CircuitConfig& cfg);

// Deterministic seeded setup over an already synthesized system.  Throws
// std::invalid_argument when production_mode is set (see above).
SetupArtifacts groth16_setup(const ConstraintSystem& cs, const Digest& circuit_digest,
                             std::span<const u8> seed, bool production_mode = false);

// Setup for the attestation circuit at this configuration.
SetupArtifacts setup_attestation(const CircuitConfig& cfg, std::span<const u8> seed,
                                 bool production_mode = false);

// Proof over a synthesized, satisfied system.  Throws std::invalid_argument
// if the assignment does not satisfy the system (no proof may be emitted for
// a broken witness) or if the key does not match the system's shape.
// rng_seed makes the proof deterministic; empty draws fresh randomness.
Proof prove(const ProvingKey& pk, const ConstraintSystem& cs, std::span<const u8> rng_seed = {});

bool verify(const VerifyingKey& vk, std::span<const Fr> public_inputs, const Proof& proof);

// Random-linear-combination batch: 3 + b pairings for b proofs, coefficients
// drawn by a PRF from rng_seed and the full transcript of (inputs, proof)
// pairs, so results are reproducible for a fixed seed.  False acceptance of
// a bad batch has probability <= 2^-128 over the coefficients.  Throws
// std::invalid_argument on an empty batch.
bool batch_verify(const VerifyingKey& vk,
                  std::span<const std::pair<std::vector<Fr>, Proof>> items,
                  std::span<const u8> rng_seed);

// parameter files: the full artifacts (prover side) and the vk-only slice
std::vector<u8> setup_serialize(const SetupArtifacts& art);
std::optional<SetupArtifacts> setup_deserialize(std::span<const u8> bytes);
std::vector<u8> vk_serialize(const SetupArtifacts& art);
std::optional<VerifierArtifacts> vk_deserialize(std::span<const u8> bytes);

}  // namespace zkpop
