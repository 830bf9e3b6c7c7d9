#pragma once
// Multi-scalar multiplication. Signed-digit Pippenger for general scalars,
// with dedicated fast paths for 0/1 scalars (circuit witnesses are mostly
// bits, so the bulk of a proving MSM is a plain point sum), plus fixed-base
// window tables for the key generator's many single-base multiplications.

#include <zkpop/bn254.hpp>

#include <vector>

namespace zkpop {

G1 msm_g1(const std::vector<G1Affine>& bases, const std::vector<Fr>& scalars);
G2 msm_g2(const std::vector<G2Affine>& bases, const std::vector<Fr>& scalars);

template <typename Jac>
struct FixedBase {
    // window width 8: 32 windows of 255 odd..all multiples
    std::vector<typename Jac::Affine> table;  // [win * 255 + (d-1)]

    explicit FixedBase(const typename Jac::Affine& base) {
        std::vector<Jac> jac;
        jac.reserve(32 * 255);
        Jac win_base = Jac::from_affine(base);
        for (int w = 0; w < 32; w++) {
            Jac acc = Jac::identity();
            for (int d = 1; d <= 255; d++) {
                acc = acc.add(win_base);
                jac.push_back(acc);
            }
            for (int k = 0; k < 8; k++) win_base = win_base.dbl();
        }
        table = batch_to_affine(jac);
    }

    Jac mul(const Fr& k) const {
        Limbs v = k.to_limbs();
        Jac acc = Jac::identity();
        for (int w = 0; w < 32; w++) {
            unsigned d = (v[w / 8] >> ((w % 8) * 8)) & 0xFF;
            if (d) acc = acc.add_affine(table[w * 255 + d - 1]);
        }
        return acc;
    }
};

using FixedBaseG1 = FixedBase<G1>;
using FixedBaseG2 = FixedBase<G2>;

}  // namespace zkpop
