#include <zkpop/fft.hpp>

#include <bit>
#include <stdexcept>

namespace zkpop {

EvalDomain EvalDomain::radix2(u64 min_size) {
    if (min_size == 0 || min_size > (1ULL << FrParams::TWO_ADICITY))
        throw std::invalid_argument("fft: domain size outside the two-adic range");
    EvalDomain d;
    d.size = std::bit_ceil(min_size);
    d.log_size = static_cast<u32>(std::countr_zero(d.size));

    // primitive 2^28-th root: generator^((r-1) / 2^28), squared down to size
    Limbs e = FrParams::MOD;
    e[0] -= 1;
    for (int i = 0; i < FrParams::TWO_ADICITY; i++) {
        for (int j = 0; j < 3; j++) e[j] = (e[j] >> 1) | (e[j + 1] << 63);
        e[3] >>= 1;
    }
    Fr w = Fr::from_u64(FrParams::GENERATOR).pow(e);
    for (u32 i = d.log_size; i < FrParams::TWO_ADICITY; i++) w = w * w;
    d.omega = w;
    d.omega_inv = w.inv();
    d.size_inv = Fr::from_u64(d.size).inv();
    d.shift = Fr::from_u64(FrParams::GENERATOR);
    d.shift_inv = d.shift.inv();
    return d;
}

static void transform(std::vector<Fr>& a, u32 log_size, const Fr& root) {
    const u64 n = a.size();
    for (u64 i = 1, j = 0; i < n; i++) {  // bit-reversal permutation
        u64 bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (u32 s = 1; s <= log_size; s++) {
        const u64 len = 1ULL << s;
        const Fr wlen = root.pow(Limbs{n >> s, 0, 0, 0});
        for (u64 k = 0; k < n; k += len) {
            Fr w = Fr::one();
            for (u64 j = 0; j < len / 2; j++) {
                Fr t = w * a[k + j + len / 2];
                Fr u = a[k + j];
                a[k + j] = u + t;
                a[k + j + len / 2] = u - t;
                w = w * wlen;
            }
        }
    }
}

void EvalDomain::fft(std::vector<Fr>& a) const {
    if (a.size() != size) throw std::invalid_argument("fft: vector size mismatch");
    transform(a, log_size, omega);
}

void EvalDomain::ifft(std::vector<Fr>& a) const {
    if (a.size() != size) throw std::invalid_argument("fft: vector size mismatch");
    transform(a, log_size, omega_inv);
    for (Fr& x : a) x = x * size_inv;
}

void EvalDomain::coset_fft(std::vector<Fr>& a) const {
    Fr pw = Fr::one();
    for (Fr& x : a) {
        x = x * pw;
        pw = pw * shift;
    }
    fft(a);
}

void EvalDomain::coset_ifft(std::vector<Fr>& a) const {
    ifft(a);
    Fr pw = Fr::one();
    for (Fr& x : a) {
        x = x * pw;
        pw = pw * shift_inv;
    }
}

Fr EvalDomain::vanishing_at(const Fr& x) const {
    return x.pow(Limbs{size, 0, 0, 0}) - Fr::one();
}

std::vector<Fr> EvalDomain::lagrange_at(const Fr& x) const {
    std::vector<Fr> den(size);
    Fr wi = Fr::one();
    bool on_domain = false;
    for (u64 i = 0; i < size; i++) {
        den[i] = x - wi;
        on_domain |= den[i].is_zero();
        wi = wi * omega;
    }
    std::vector<Fr> out(size);
    if (on_domain) {
        for (u64 i = 0; i < size; i++) out[i] = den[i].is_zero() ? Fr::one() : Fr::zero();
        return out;
    }
    batch_invert(den);
    // L_i(x) = Z(x) * omega^i / (n * (x - omega^i))
    Fr zn = vanishing_at(x) * size_inv;
    wi = Fr::one();
    for (u64 i = 0; i < size; i++) {
        out[i] = zn * wi * den[i];
        wi = wi * omega;
    }
    return out;
}

}  // namespace zkpop
