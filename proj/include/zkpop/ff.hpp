#pragma once
// Prime-field arithmetic for 254-bit moduli: 4x64-bit limbs, Montgomery form.
// One template, two instantiations (BN254 base field Fp and scalar field Fr).

#include <array>
#include <cstdint>
#include <cstring>
#include <optional>
#include <vector>

namespace zkpop {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Limbs = std::array<u64, 4>;

// ---- plain 256-bit helpers (non-modular) --------------------------------

namespace u256 {

// a + b -> out, returns carry
inline u64 add(Limbs& out, const Limbs& a, const Limbs& b) {
    u128 c = 0;
    for (int i = 0; i < 4; i++) {
        c += (u128)a[i] + b[i];
        out[i] = (u64)c;
        c >>= 64;
    }
    return (u64)c;
}

// a - b -> out, returns borrow
inline u64 sub(Limbs& out, const Limbs& a, const Limbs& b) {
    u128 br = 0;
    for (int i = 0; i < 4; i++) {
        u128 d = (u128)a[i] - b[i] - br;
        out[i] = (u64)d;
        br = (d >> 64) & 1;
    }
    return (u64)br;
}

// lexicographic compare: -1, 0, 1
inline int cmp(const Limbs& a, const Limbs& b) {
    for (int i = 3; i >= 0; i--) {
        if (a[i] < b[i]) return -1;
        if (a[i] > b[i]) return 1;
    }
    return 0;
}

inline bool is_zero(const Limbs& a) { return (a[0] | a[1] | a[2] | a[3]) == 0; }

inline int bit(const Limbs& a, int i) { return (a[i >> 6] >> (i & 63)) & 1; }

inline Limbs from_bytes_le(const std::uint8_t* b) {
    Limbs out{};
    for (int i = 0; i < 4; i++)
        std::memcpy(&out[i], b + 8 * i, 8);
    return out;
}

inline void to_bytes_le(const Limbs& a, std::uint8_t* b) {
    for (int i = 0; i < 4; i++)
        std::memcpy(b + 8 * i, &a[i], 8);
}

}  // namespace u256

// ---- field parameter packs ----------------------------------------------

// BN254 base field, p = 36x^4 + 36x^3 + 24x^2 + 6x + 1, x = 4965661367192848881
struct FpParams {
    static constexpr Limbs MOD = {0x3c208c16d87cfd47ULL, 0x97816a916871ca8dULL,
                                  0xb85045b68181585dULL, 0x30644e72e131a029ULL};
    static constexpr Limbs R2 = {0xf32cfc5b538afa89ULL, 0xb5e71911d44501fbULL,
                                 0x47ab1eff0a417ff6ULL, 0x06d89f71cab8351fULL};
    static constexpr Limbs R1 = {0xd35d438dc58f0d9dULL, 0x0a78eb28f5c70b3dULL,
                                 0x666ea36f7879462cULL, 0x0e0a77c19a07df2fULL};
    static constexpr u64 INV = 0x87d20782e4866389ULL;
    static constexpr int TWO_ADICITY = 1;
};

// BN254 scalar field, r = p - 6x^2 (group order of G1)
struct FrParams {
    static constexpr Limbs MOD = {0x43e1f593f0000001ULL, 0x2833e84879b97091ULL,
                                  0xb85045b68181585dULL, 0x30644e72e131a029ULL};
    static constexpr Limbs R2 = {0x1bb8e645ae216da7ULL, 0x53fe3ab1e35c59e3ULL,
                                 0x8c49833d53bb8085ULL, 0x0216d0b17f4e44a5ULL};
    static constexpr Limbs R1 = {0xac96341c4ffffffbULL, 0x36fc76959f60cd29ULL,
                                 0x666ea36f7879462eULL, 0x0e0a77c19a07df2fULL};
    static constexpr u64 INV = 0xc2e1f593efffffffULL;
    static constexpr int TWO_ADICITY = 28;
    // multiplicative generator of Fr*, also used for FFT cosets
    static constexpr u64 GENERATOR = 5;
};

// ---- Montgomery field element -------------------------------------------

template <typename P>
struct Fe {
    Limbs n{};  // Montgomery residue: value * 2^256 mod MOD

    static constexpr Fe zero() { return Fe{}; }
    static Fe one() { return Fe{P::R1}; }

    static Fe from_u64(u64 v) {
        Fe t{Limbs{v, 0, 0, 0}};
        return t * Fe{P::R2};
    }

    static Fe from_limbs(const Limbs& canonical) {
        Fe t{canonical};
        return t * Fe{P::R2};
    }

    // 32 little-endian bytes; rejects non-canonical encodings
    static std::optional<Fe> from_bytes(const std::uint8_t* b) {
        Limbs v = u256::from_bytes_le(b);
        if (u256::cmp(v, P::MOD) >= 0) return std::nullopt;
        return from_limbs(v);
    }

    // 64 uniform little-endian bytes -> uniform field element
    static Fe from_bytes_wide(const std::uint8_t* b) {
        Fe lo{u256::from_bytes_le(b)};
        Fe hi{u256::from_bytes_le(b + 32)};
        Fe r2{P::R2};
        // lo*R + hi*2^256*R = (lo + hi*2^256) * R
        return lo * r2 + (hi * r2) * r2;
    }

    Limbs to_limbs() const {  // canonical integer
        Fe t = mont_mul(*this, Fe{Limbs{1, 0, 0, 0}});
        return t.n;
    }

    void to_bytes(std::uint8_t* b) const { u256::to_bytes_le(to_limbs(), b); }

    std::array<std::uint8_t, 32> to_bytes() const {
        std::array<std::uint8_t, 32> out;
        to_bytes(out.data());
        return out;
    }

    bool is_zero() const { return u256::is_zero(n); }
    bool is_one() const { return *this == one(); }
    bool operator==(const Fe& o) const { return n == o.n; }
    bool operator!=(const Fe& o) const { return n != o.n; }

    Fe operator+(const Fe& o) const {
        Fe r;
        u256::add(r.n, n, o.n);  // both < MOD < 2^254, no 256-bit overflow
        if (u256::cmp(r.n, P::MOD) >= 0) u256::sub(r.n, r.n, P::MOD);
        return r;
    }

    Fe operator-(const Fe& o) const {
        Fe r;
        if (u256::sub(r.n, n, o.n)) u256::add(r.n, r.n, P::MOD);
        return r;
    }

    Fe operator-() const {
        if (is_zero()) return *this;
        Fe r;
        u256::sub(r.n, P::MOD, n);
        return r;
    }

    Fe dbl() const { return *this + *this; }

    static Fe mont_mul(const Fe& a, const Fe& b) {
        // CIOS: interleaved multiply and Montgomery reduction
        u64 t[6] = {0, 0, 0, 0, 0, 0};
        for (int i = 0; i < 4; i++) {
            u128 c = 0;
            for (int j = 0; j < 4; j++) {
                c += (u128)a.n[j] * b.n[i] + t[j];
                t[j] = (u64)c;
                c >>= 64;
            }
            c += t[4];
            t[4] = (u64)c;
            t[5] = (u64)(c >> 64);

            u64 m = t[0] * P::INV;
            c = (u128)m * P::MOD[0] + t[0];
            c >>= 64;
            for (int j = 1; j < 4; j++) {
                c += (u128)m * P::MOD[j] + t[j];
                t[j - 1] = (u64)c;
                c >>= 64;
            }
            c += t[4];
            t[3] = (u64)c;
            t[4] = t[5] + (u64)(c >> 64);
        }
        Fe r{Limbs{t[0], t[1], t[2], t[3]}};
        if (t[4] || u256::cmp(r.n, P::MOD) >= 0) u256::sub(r.n, r.n, P::MOD);
        return r;
    }

    Fe operator*(const Fe& o) const { return mont_mul(*this, o); }
    Fe square() const { return mont_mul(*this, *this); }

    Fe& operator+=(const Fe& o) { return *this = *this + o; }
    Fe& operator-=(const Fe& o) { return *this = *this - o; }
    Fe& operator*=(const Fe& o) { return *this = *this * o; }

    // exponent as canonical 256-bit little-endian limbs
    Fe pow(const Limbs& e) const {
        // 4-bit fixed window
        Fe tab[16];
        tab[0] = one();
        tab[1] = *this;
        for (int i = 2; i < 16; i++) tab[i] = tab[i - 1] * *this;
        Fe acc = one();
        bool started = false;
        for (int w = 63; w >= 0; w--) {
            int shift = (w & 15) * 4;
            u64 digit = (e[w >> 4] >> shift) & 0xF;
            if (started) {
                acc = acc.square().square().square().square();
                if (digit) acc *= tab[digit];
            } else if (digit) {
                acc = tab[digit];
                started = true;
            }
        }
        return started ? acc : one();
    }

    Fe pow(u64 e) const { return pow(Limbs{e, 0, 0, 0}); }

    Fe inv() const {
        // Fermat: a^(p-2). inv(0) = 0 by convention (gadget-friendly).
        Limbs e = P::MOD;
        e[0] -= 2;  // MOD is odd and > 2, no borrow
        return pow(e);
    }

    // Tonelli-Shanks; works for any two-adicity. nullopt if non-residue.
    std::optional<Fe> sqrt() const {
        if (is_zero()) return *this;
        // q odd with mod-1 = q * 2^s
        static const auto pre = [] {
            Limbs q = P::MOD;
            q[0] -= 1;
            int s = 0;
            while (!(q[0] & 1)) {
                for (int i = 0; i < 3; i++) q[i] = (q[i] >> 1) | (q[i + 1] << 63);
                q[3] >>= 1;
                s++;
            }
            // find a quadratic non-residue z: first small candidate with
            // euler criterion == -1
            Limbs half = P::MOD;  // (mod-1)/2
            half[0] -= 1;
            for (int i = 0; i < 3; i++) half[i] = (half[i] >> 1) | (half[i + 1] << 63);
            half[3] >>= 1;
            Fe z;
            for (u64 c = 2;; c++) {
                z = from_u64(c);
                if (z.pow(half) == -one()) break;
            }
            struct Pre { Limbs q; int s; Fe z; Limbs half; };
            return Pre{q, s, z, half};
        }();

        if (pow(pre.half) != one()) return std::nullopt;

        Fe m_c = pre.z.pow(pre.q);
        Fe t = pow(pre.q);
        // r = a^((q+1)/2)
        Limbs q1 = pre.q;
        u64 carry = 1;  // q odd, q+1 even
        for (int i = 0; i < 4 && carry; i++) {
            q1[i] += carry;
            carry = (q1[i] == 0);
        }
        for (int i = 0; i < 3; i++) q1[i] = (q1[i] >> 1) | (q1[i + 1] << 63);
        q1[3] >>= 1;
        Fe r = pow(q1);
        int m = pre.s;
        Fe c = m_c;
        while (!(t == one())) {
            Fe t2 = t;
            int i = 0;
            while (!(t2 == one())) {
                t2 = t2.square();
                i++;
            }
            Fe b = c;
            for (int j = 0; j < m - i - 1; j++) b = b.square();
            m = i;
            c = b.square();
            t *= c;
            r *= b;
        }
        return r;
    }

    // canonical-integer comparison (for serialization tie-breaks)
    bool canonical_gt(const Fe& o) const {
        return u256::cmp(to_limbs(), o.to_limbs()) > 0;
    }
    bool canonical_is_odd() const { return to_limbs()[0] & 1; }
};

using Fp = Fe<FpParams>;
using Fr = Fe<FrParams>;

// Batch inversion: replaces each x by x^-1 (zeroes stay zero), one field
// inversion plus 3n multiplications.
template <typename F>
inline void batch_invert(std::vector<F>& xs) {
    std::vector<F> prefix(xs.size());
    F acc = F::one();
    for (size_t i = 0; i < xs.size(); i++) {
        prefix[i] = acc;
        if (!xs[i].is_zero()) acc *= xs[i];
    }
    F inv = acc.inv();
    for (size_t i = xs.size(); i-- > 0;) {
        if (xs[i].is_zero()) continue;
        F x = xs[i];
        xs[i] = inv * prefix[i];
        inv *= x;
    }
}

}  // namespace zkpop
