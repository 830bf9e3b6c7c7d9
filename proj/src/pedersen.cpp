#include <zkpop/pedersen.hpp>

namespace zkpop {

const CommitmentParams& CommitmentParams::standard() {
    static const CommitmentParams p =
        from_generators(jub_generator(), jub_hash_to_subgroup("zkpop/v1/pedersen/h", 0));
    return p;
}

CommitmentParams CommitmentParams::from_generators(const JubAffine& g, const JubAffine& h) {
    CommitmentParams p;
    p.g = g;
    p.h = h;
    p.g_tab = std::make_shared<JubFixedBase>(g);
    p.h_tab = std::make_shared<JubFixedBase>(h);
    return p;
}

JubAffine pedersen_commit(const Fl& value, const Fl& randomness, const CommitmentParams& params) {
    JubExt gv = params.g_tab->mul(value);
    JubExt hr = params.h_tab->mul(randomness);
    return gv.add(hr).to_affine();
}

FeatureCommitment pedersen_open_commit(const Fl& value, const Fl& randomness,
                                       const CommitmentParams& params) {
    return {pedersen_commit(value, randomness, params), value, randomness};
}

JubAffine pedersen_aggregate(std::span<const JubAffine> commitments) {
    JubExt acc = JubExt::identity();
    for (const auto& c : commitments) acc = acc.add(JubExt::from_affine(c));
    return acc.to_affine();
}

JubAffine pedersen_delta(const JubAffine& next, const JubAffine& prev) {
    return JubExt::from_affine(next).add(JubExt::from_affine(prev).neg()).to_affine();
}

}  // namespace zkpop
