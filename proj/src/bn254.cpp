#include <zkpop/bn254.hpp>

namespace zkpop {

Fp2 G2Params::b() {
    static const Fp2 b2 = Fp2{Fp::from_u64(3), Fp::zero()} * Fp2::xi().inv();
    return b2;
}

G1Affine g1_generator() { return {Fp::from_u64(1), Fp::from_u64(2), false}; }

// canonical limb constants below are the standard generator coordinates
static Fp fp_from_dec(const char* s) {
    Fp acc = Fp::zero();
    Fp ten = Fp::from_u64(10);
    for (const char* c = s; *c; c++) acc = acc * ten + Fp::from_u64(*c - '0');
    return acc;
}

G2Affine g2_generator() {
    static const G2Affine g = [] {
        G2Affine o;
        o.inf = false;
        o.x.c0 = fp_from_dec("10857046999023057135944570762232829481370756359578518086990519993285655852781");
        o.x.c1 = fp_from_dec("11559732032986387107991004021392285783925812861821192530917403151452391805634");
        o.y.c0 = fp_from_dec("8495653923123431417604973247489272438418190587263600148770280649306958101930");
        o.y.c1 = fp_from_dec("4082367875863433681332203403145435568316851327593401208105741076214120093531");
        return o;
    }();
    return g;
}

bool g1_on_curve(const G1Affine& p) {
    if (p.inf) return true;
    return p.y.square() == p.x.square() * p.x + G1Params::b();
}

bool g2_on_curve(const G2Affine& p) {
    if (p.inf) return true;
    return p.y.square() == p.x.square() * p.x + G2Params::b();
}

bool g1_valid(const G1Affine& p) {
    // G1 has prime order (cofactor 1): on-curve suffices
    return g1_on_curve(p);
}

bool g2_valid(const G2Affine& p) {
    if (!g2_on_curve(p)) return false;
    if (p.inf) return true;
    // subgroup check: r Q = O
    return G2::from_affine(p).mul(FrParams::MOD).is_identity();
}

// gamma12 = xi^((p-1)/3), gamma13 = xi^((p-1)/2), both in Fp2
struct PsiConsts {
    Fp2 g12, g13;
};
static const PsiConsts& psi_consts() {
    static const PsiConsts c = [] {
        // (p-1)/2 and (p-1)/3 as limb constants
        Limbs e2 = FpParams::MOD;
        e2[0] -= 1;
        for (int i = 0; i < 3; i++) e2[i] = (e2[i] >> 1) | (e2[i + 1] << 63);
        e2[3] >>= 1;
        // (p-1)/3 = (p-1) * inv3 computed over plain integers: divide by
        // repeated subtraction is hopeless; use the fact that p = 3k+1 and
        // do a schoolbook short division by 3.
        Limbs e3{};
        u64 rem = 0;
        Limbs pm1 = FpParams::MOD;
        pm1[0] -= 1;
        for (int i = 3; i >= 0; i--) {
            u128 cur = ((u128)rem << 64) | pm1[i];
            e3[i] = (u64)(cur / 3);
            rem = (u64)(cur % 3);
        }
        PsiConsts out;
        out.g13 = pow_gen(Fp2::xi(), std::span<const u64>(e2.data(), 4));
        out.g12 = pow_gen(Fp2::xi(), std::span<const u64>(e3.data(), 4));
        return out;
    }();
    return c;
}

G2Affine g2_psi(const G2Affine& q) {
    if (q.inf) return q;
    return {q.x.conj() * psi_consts().g12, q.y.conj() * psi_consts().g13, false};
}

// Fp12 Frobenius: conjugate Fp2 coefficients, scale basis slots
// {v, v^2, w, vw, v^2w} by {g1, g1^2, gw, gw g1, gw g1^2}, gw = xi^((p-1)/6),
// g1 = gw^2.
Fp12 Fp12::frobenius() const {
    struct Gammas {
        Fp2 gw, g1, g2, gwg1, gwg2;
    };
    static const Gammas G = [] {
        Limbs e6{};
        u64 rem = 0;
        Limbs pm1 = FpParams::MOD;
        pm1[0] -= 1;
        for (int i = 3; i >= 0; i--) {
            u128 cur = ((u128)rem << 64) | pm1[i];
            e6[i] = (u64)(cur / 6);
            rem = (u64)(cur % 6);
        }
        Gammas g;
        g.gw = pow_gen(Fp2::xi(), std::span<const u64>(e6.data(), 4));
        g.g1 = g.gw.square();
        g.g2 = g.g1.square();
        g.gwg1 = g.gw * g.g1;
        g.gwg2 = g.gw * g.g2;
        return g;
    }();
    Fp12 r;
    r.c0.c0 = c0.c0.conj();
    r.c0.c1 = c0.c1.conj() * G.g1;
    r.c0.c2 = c0.c2.conj() * G.g2;
    r.c1.c0 = c1.c0.conj() * G.gw;
    r.c1.c1 = c1.c1.conj() * G.gwg1;
    r.c1.c2 = c1.c2.conj() * G.gwg2;
    return r;
}

// --- serialization -------------------------------------------------------

static constexpr std::uint8_t FLAG_INF = 0x80, FLAG_ODD = 0x40;

void g1_serialize(const G1Affine& p, std::uint8_t out[32]) {
    if (p.inf) {
        std::memset(out, 0, 32);
        out[31] = FLAG_INF;
        return;
    }
    p.x.to_bytes(out);
    if (p.y.canonical_is_odd()) out[31] |= FLAG_ODD;
}

std::optional<G1Affine> g1_deserialize(const std::uint8_t in[32]) {
    std::uint8_t flags = in[31] & 0xC0;
    std::uint8_t buf[32];
    std::memcpy(buf, in, 32);
    buf[31] &= 0x3F;
    if (flags & FLAG_INF) {
        for (int i = 0; i < 32; i++)
            if (buf[i]) return std::nullopt;
        return G1Affine{};
    }
    auto x = Fp::from_bytes(buf);
    if (!x) return std::nullopt;
    auto y2 = x->square() * *x + G1Params::b();
    auto y = y2.sqrt();
    if (!y) return std::nullopt;
    bool want_odd = flags & FLAG_ODD;
    G1Affine p{*x, y->canonical_is_odd() == want_odd ? *y : -*y, false};
    return p;
}

void g2_serialize(const G2Affine& p, std::uint8_t out[64]) {
    if (p.inf) {
        std::memset(out, 0, 64);
        out[63] = FLAG_INF;
        return;
    }
    p.x.c0.to_bytes(out);
    p.x.c1.to_bytes(out + 32);
    // parity of y: lexicographic on (c1, c0) canonical form would also work;
    // we use the parity of y.c0, breaking ties never (y != -y since y != 0
    // would need y.c0 odd xor even... y and -y differ in c0 parity unless
    // y.c0 = 0, in which case c1 parity differs)
    bool odd = p.y.c0.is_zero() ? p.y.c1.canonical_is_odd()
                                : p.y.c0.canonical_is_odd();
    if (odd) out[63] |= FLAG_ODD;
}

std::optional<G2Affine> g2_deserialize(const std::uint8_t in[64]) {
    std::uint8_t flags = in[63] & 0xC0;
    std::uint8_t buf[64];
    std::memcpy(buf, in, 64);
    buf[63] &= 0x3F;
    if (flags & FLAG_INF) {
        for (int i = 0; i < 64; i++)
            if (buf[i]) return std::nullopt;
        return G2Affine{};
    }
    auto x0 = Fp::from_bytes(buf);
    auto x1 = Fp::from_bytes(buf + 32);
    if (!x0 || !x1) return std::nullopt;
    Fp2 x{*x0, *x1};
    Fp2 y2 = x.square() * x + G2Params::b();
    // sqrt in Fp2 by the complex method: for y = a + bu, a^2 - b^2 = re,
    // 2ab = im, and a^2 + b^2 = +-sqrt(norm); try both branches
    auto y = [&]() -> std::optional<Fp2> {
        Fp n = y2.c0.square() + y2.c1.square();
        auto sn = n.sqrt();
        if (!sn) return std::nullopt;
        Fp inv2 = Fp::from_u64(2).inv();
        for (Fp s : {*sn, -*sn}) {
            auto a = ((y2.c0 + s) * inv2).sqrt();
            if (!a) continue;
            Fp2 cand;
            if (a->is_zero()) {
                auto b = (-y2.c0).sqrt();
                if (!b) continue;
                cand = {Fp::zero(), *b};
            } else {
                cand = {*a, y2.c1 * (a->dbl()).inv()};
            }
            if (cand.square() == y2) return cand;
        }
        return std::nullopt;
    }();
    if (!y) return std::nullopt;
    bool want_odd = flags & FLAG_ODD;
    bool odd = y->c0.is_zero() ? y->c1.canonical_is_odd() : y->c0.canonical_is_odd();
    Fp2 yy = (odd == want_odd) ? *y : -*y;
    return G2Affine{x, yy, false};
}

}  // namespace zkpop
