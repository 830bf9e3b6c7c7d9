#include <zkpop/pairing.hpp>

namespace zkpop {

// BN parameter x = 4965661367192848881; Miller loop runs over 6x+2,
// which needs 65 bits — keep the constant in u128
static constexpr u128 ATE_LOOP = (u128)6 * 4965661367192848881ULL + 2;

// signed binary digits of ATE_LOOP, least significant first
static std::vector<int8_t> ate_naf() {
    static const std::vector<int8_t> naf = [] {
        std::vector<int8_t> out;
        u128 k = ATE_LOOP;
        while (k > 0) {
            if (k & 1) {
                int8_t d = (int8_t)(2 - (int)(k & 3));
                out.push_back(d);
                k -= d;
            } else {
                out.push_back(0);
            }
            k >>= 1;
        }
        return out;
    }();
    return naf;
}

// A line through twist points, evaluated at a G1 point and untwisted:
//   l = -yP  +  (lambda xP) w  +  (yT - lambda xT) v w
// (basis slots c0.c0, c1.c0, c1.c1 of Fp12 over Fp2)
struct LineEval {
    Fp neg_yp;
    Fp2 w_coef, vw_coef;

    Fp12 to_fp12() const {
        Fp12 f;
        f.c0.c0 = Fp2{neg_yp, Fp::zero()};
        f.c1.c0 = w_coef;
        f.c1.c1 = vw_coef;
        return f;
    }
};

// per-pair Miller state: current twist point, in affine coordinates
struct PairState {
    Fp xp, yp;    // G1 point
    Fp2 qx, qy;   // original twist point (for add steps)
    Fp2 tx, ty;   // running point T
    bool active = false;
};

// One lockstep step helper: compute lambda = num/den for each active pair
// with a single batched inversion, then update T and emit lines.
static void dbl_step(std::vector<PairState>& st, Fp12& f) {
    std::vector<Fp2> dens(st.size(), Fp2::zero());
    for (size_t i = 0; i < st.size(); i++)
        if (st[i].active) dens[i] = st[i].ty + st[i].ty;  // 2 yT
    // batch invert nonzero Fp2 entries via Montgomery trick
    std::vector<Fp2> pre(st.size());
    Fp2 acc = Fp2::one();
    for (size_t i = 0; i < st.size(); i++) {
        pre[i] = acc;
        if (st[i].active) acc *= dens[i];
    }
    Fp2 inv = acc.inv();
    for (size_t i = st.size(); i-- > 0;) {
        if (!st[i].active) continue;
        Fp2 d = dens[i];
        dens[i] = inv * pre[i];
        inv *= d;
    }
    for (size_t i = 0; i < st.size(); i++) {
        auto& s = st[i];
        if (!s.active) continue;
        Fp2 x2 = s.tx.square();
        Fp2 lambda = (x2 + x2 + x2) * dens[i];  // 3 xT^2 / 2 yT
        Fp2 x3 = lambda.square() - s.tx - s.tx;
        Fp2 y3 = lambda * (s.tx - x3) - s.ty;
        LineEval l{-s.yp, lambda.mul_fp(s.xp), s.ty - lambda * s.tx};
        s.tx = x3;
        s.ty = y3;
        f *= l.to_fp12();
    }
}

static void add_step(std::vector<PairState>& st, Fp12& f, bool negate_q) {
    std::vector<Fp2> dens(st.size(), Fp2::zero());
    std::vector<Fp2> qys(st.size());
    for (size_t i = 0; i < st.size(); i++) {
        if (!st[i].active) continue;
        qys[i] = negate_q ? -st[i].qy : st[i].qy;
        dens[i] = st[i].qx - st[i].tx;  // x2 - x1; never 0 in the ate loop
    }
    std::vector<Fp2> pre(st.size());
    Fp2 acc = Fp2::one();
    for (size_t i = 0; i < st.size(); i++) {
        pre[i] = acc;
        if (st[i].active) acc *= dens[i];
    }
    Fp2 inv = acc.inv();
    for (size_t i = st.size(); i-- > 0;) {
        if (!st[i].active) continue;
        Fp2 d = dens[i];
        dens[i] = inv * pre[i];
        inv *= d;
    }
    for (size_t i = 0; i < st.size(); i++) {
        auto& s = st[i];
        if (!s.active) continue;
        Fp2 lambda = (qys[i] - s.ty) * dens[i];
        Fp2 x3 = lambda.square() - s.tx - s.qx;
        Fp2 y3 = lambda * (s.tx - x3) - s.ty;
        LineEval l{-s.yp, lambda.mul_fp(s.xp), s.ty - lambda * s.tx};
        s.tx = x3;
        s.ty = y3;
        f *= l.to_fp12();
    }
}

// final correction adds with externally supplied points (psi images)
static void add_point_step(std::vector<PairState>& st, Fp12& f,
                           const std::vector<std::pair<Fp2, Fp2>>& pts) {
    std::vector<Fp2> dens(st.size(), Fp2::zero());
    for (size_t i = 0; i < st.size(); i++)
        if (st[i].active) dens[i] = pts[i].first - st[i].tx;
    std::vector<Fp2> pre(st.size());
    Fp2 acc = Fp2::one();
    for (size_t i = 0; i < st.size(); i++) {
        pre[i] = acc;
        if (st[i].active) acc *= dens[i];
    }
    Fp2 inv = acc.inv();
    for (size_t i = st.size(); i-- > 0;) {
        if (!st[i].active) continue;
        Fp2 d = dens[i];
        dens[i] = inv * pre[i];
        inv *= d;
    }
    for (size_t i = 0; i < st.size(); i++) {
        auto& s = st[i];
        if (!s.active) continue;
        Fp2 lambda = (pts[i].second - s.ty) * dens[i];
        Fp2 x3 = lambda.square() - s.tx - pts[i].first;
        Fp2 y3 = lambda * (s.tx - x3) - s.ty;
        LineEval l{-s.yp, lambda.mul_fp(s.xp), s.ty - lambda * s.tx};
        s.tx = x3;
        s.ty = y3;
        f *= l.to_fp12();
    }
}

Fp12 miller_product(const std::vector<std::pair<G1Affine, G2Affine>>& pairs) {
    std::vector<PairState> st(pairs.size());
    bool any = false;
    for (size_t i = 0; i < pairs.size(); i++) {
        const auto& [p, q] = pairs[i];
        if (p.inf || q.inf) continue;  // e(O, Q) = e(P, O) = 1
        st[i] = {p.x, p.y, q.x, q.y, q.x, q.y, true};
        any = true;
    }
    Fp12 f = Fp12::one();
    if (!any) return f;

    auto naf = ate_naf();
    for (int i = (int)naf.size() - 2; i >= 0; i--) {
        f = f.square();
        dbl_step(st, f);
        if (naf[i] == 1)
            add_step(st, f, false);
        else if (naf[i] == -1)
            add_step(st, f, true);
    }

    // frobenius correction: add psi(Q), then subtract psi^2(Q)
    std::vector<std::pair<Fp2, Fp2>> q1(st.size()), q2(st.size());
    for (size_t i = 0; i < st.size(); i++) {
        if (!st[i].active) continue;
        G2Affine q{st[i].qx, st[i].qy, false};
        G2Affine p1 = g2_psi(q);
        G2Affine p2 = g2_psi(p1);
        q1[i] = {p1.x, p1.y};
        q2[i] = {p2.x, -p2.y};
    }
    add_point_step(st, f, q1);
    add_point_step(st, f, q2);
    return f;
}

// hard-part exponent (p^4 - p^2 + 1)/r, 761 bits
static constexpr u64 HARD_EXP[12] = {
    0xe81bb482ccdf42b1ULL, 0x5abf5cc4f49c36d4ULL, 0xf1154e7e1da014fdULL,
    0xdcc7b44c87cdbacfULL, 0xaaa441e3954bcf8aULL, 0x6b887d56d5095f23ULL,
    0x79581e16f3fd90c6ULL, 0x3b1b1355d189227dULL, 0x4e529a5861876f6bULL,
    0x6c0eb522d5b12278ULL, 0x331ec15183177fafULL, 0x01baaa710b0759adULL};

Fp12 final_exponentiation(const Fp12& f) {
    // easy part: f^((p^6-1)(p^2+1))
    Fp12 t = f.conj() * f.inv();
    t = t.frobenius().frobenius() * t;
    // hard part
    return pow_gen(t, std::span<const u64>(HARD_EXP, 12));
}

Fp12 pairing(const G1Affine& p, const G2Affine& q) {
    return final_exponentiation(miller_product({{p, q}}));
}

bool pairing_product_is_one(const std::vector<std::pair<G1Affine, G2Affine>>& pairs) {
    return final_exponentiation(miller_product(pairs)).is_one();
}

}  // namespace zkpop
