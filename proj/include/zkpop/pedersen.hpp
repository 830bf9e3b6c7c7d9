#pragma once
#include <zkpop/jubjub.hpp>

#include <memory>
#include <span>

namespace zkpop {

// Pedersen commitments C = g^v h^r in the prime-order subgroup.  h is derived
// from a fixed domain tag by hashing, so nobody knows log_g(h).
struct CommitmentParams {
    JubAffine g, h;
    std::shared_ptr<JubFixedBase> g_tab, h_tab;

    // g = subgroup generator, h = hash-derived; tables built once
    static const CommitmentParams& standard();
    static CommitmentParams from_generators(const JubAffine& g, const JubAffine& h);
};

// a commitment together with its opening (prover side only)
struct FeatureCommitment {
    JubAffine point;
    Fl value;
    Fl randomness;
};

JubAffine pedersen_commit(const Fl& value, const Fl& randomness, const CommitmentParams& params);
FeatureCommitment pedersen_open_commit(const Fl& value, const Fl& randomness,
                                       const CommitmentParams& params);

// product of commitments; commits to the component-wise sums. empty -> identity
JubAffine pedersen_aggregate(std::span<const JubAffine> commitments);

// C_next / C_prev: commits to the value difference with randomness difference
JubAffine pedersen_delta(const JubAffine& next, const JubAffine& prev);

}  // namespace zkpop
