#include <zkpop/msm.hpp>

#include <cassert>
#include <cmath>

namespace zkpop {

template <typename Jac>
static Jac msm_impl(const std::vector<typename Jac::Affine>& bases,
                    const std::vector<Fr>& scalars) {
    assert(bases.size() == scalars.size());
    Jac ones_sum = Jac::identity();
    std::vector<size_t> general;
    std::vector<Limbs> gen_scalars;
    general.reserve(bases.size());
    const Limbs ONE{1, 0, 0, 0};
    for (size_t i = 0; i < bases.size(); i++) {
        if (bases[i].inf || scalars[i].is_zero()) continue;
        Limbs k = scalars[i].to_limbs();
        if (k == ONE) {
            ones_sum = ones_sum.add_affine(bases[i]);
        } else {
            general.push_back(i);
            gen_scalars.push_back(k);
        }
    }
    size_t n = general.size();
    if (n == 0) return ones_sum;
    if (n < 16) {
        Jac acc = ones_sum;
        for (size_t j = 0; j < n; j++)
            acc = acc.add(Jac::from_affine(bases[general[j]]).mul(gen_scalars[j]));
        return acc;
    }

    int c = std::max(4, (int)std::floor(std::log2((double)n)) - 3);
    if (c > 16) c = 16;
    int windows = (256 + c - 1) / c + 1;  // +1 for signed-digit carry spill
    int half = 1 << (c - 1);

    // signed digits per scalar per window
    std::vector<Jac> buckets(half);
    Jac total = Jac::identity();
    std::vector<std::vector<int>> digits(n, std::vector<int>(windows, 0));
    for (size_t j = 0; j < n; j++) {
        const Limbs& k = gen_scalars[j];
        int carry = 0;
        for (int w = 0; w < windows; w++) {
            int bit0 = w * c;
            unsigned d = 0;
            if (bit0 < 256) {
                int limb = bit0 >> 6, off = bit0 & 63;
                u64 lo = k[limb] >> off;
                if (off + c > 64 && limb < 3) lo |= k[limb + 1] << (64 - off);
                d = (unsigned)(lo & ((1u << c) - 1));
            }
            int v = (int)d + carry;
            if (v > half) {
                v -= 1 << c;
                carry = 1;
            } else {
                carry = 0;
            }
            digits[j][w] = v;
        }
    }

    for (int w = windows - 1; w >= 0; w--) {
        if (w != windows - 1)
            for (int k = 0; k < c; k++) total = total.dbl();
        for (auto& b : buckets) b = Jac::identity();
        bool any = false;
        for (size_t j = 0; j < n; j++) {
            int d = digits[j][w];
            if (d == 0) continue;
            any = true;
            if (d > 0)
                buckets[d - 1] = buckets[d - 1].add_affine(bases[general[j]]);
            else {
                auto neg = bases[general[j]];
                neg.y = -neg.y;
                buckets[-d - 1] = buckets[-d - 1].add_affine(neg);
            }
        }
        if (!any) continue;
        // running-sum bucket reduction: sum_d d * bucket[d]
        Jac running = Jac::identity(), window_sum = Jac::identity();
        for (int b = half - 1; b >= 0; b--) {
            running = running.add(buckets[b]);
            window_sum = window_sum.add(running);
        }
        total = total.add(window_sum);
    }
    return total.add(ones_sum);
}

G1 msm_g1(const std::vector<G1Affine>& bases, const std::vector<Fr>& scalars) {
    return msm_impl<G1>(bases, scalars);
}
G2 msm_g2(const std::vector<G2Affine>& bases, const std::vector<Fr>& scalars) {
    return msm_impl<G2>(bases, scalars);
}

}  // namespace zkpop
