#pragma once
// BN254 groups. G1: y^2 = x^3 + 3 over Fp. G2: y^2 = x^3 + 3/xi over Fp2
// (sextic D-twist). Jacobian internal representation, affine at interfaces.

#include <zkpop/ff.hpp>
#include <zkpop/fp_tower.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace zkpop {

template <typename F>
struct CurveAffine {
    F x{}, y{};
    bool inf = true;

    bool operator==(const CurveAffine& o) const {
        if (inf || o.inf) return inf == o.inf;
        return x == o.x && y == o.y;
    }
};

// Jacobian: (X, Y, Z) represents (X/Z^2, Y/Z^3); Z = 0 is infinity
template <typename F, typename Params>
struct CurveJac {
    F X{}, Y{}, Z{};

    using Affine = CurveAffine<F>;

    static CurveJac identity() { return {F::one(), F::one(), F::zero()}; }
    static F curve_b() { return Params::b(); }

    bool is_identity() const { return Z.is_zero(); }

    static CurveJac from_affine(const Affine& a) {
        if (a.inf) return identity();
        return {a.x, a.y, F::one()};
    }

    Affine to_affine() const {
        if (is_identity()) return {};
        F zi = Z.inv(), zi2 = zi.square();
        return {X * zi2, Y * zi2 * zi, false};
    }

    CurveJac neg() const { return {X, -Y, Z}; }

    CurveJac dbl() const {
        if (is_identity()) return *this;
        // a = 0 doubling (EFD dbl-2009-l)
        F A = X.square();
        F B = Y.square();
        F C = B.square();
        F t = (X + B).square() - A - C;
        F D = t + t;
        F E = A + A + A;
        F Fq = E.square();
        F X3 = Fq - (D + D);
        F C8 = C.dbl().dbl().dbl();
        F Y3 = E * (D - X3) - C8;
        F Z3 = (Y * Z).dbl();
        return {X3, Y3, Z3};
    }

    CurveJac add(const CurveJac& o) const {
        if (is_identity()) return o;
        if (o.is_identity()) return *this;
        F Z1Z1 = Z.square(), Z2Z2 = o.Z.square();
        F U1 = X * Z2Z2, U2 = o.X * Z1Z1;
        F S1 = Y * Z2Z2 * o.Z, S2 = o.Y * Z1Z1 * Z;
        if (U1 == U2) {
            if (S1 == S2) return dbl();
            return identity();
        }
        F H = U2 - U1;
        F I = (H + H).square();
        F J = H * I;
        F rr = (S2 - S1).dbl();
        F V = U1 * I;
        F X3 = rr.square() - J - V - V;
        F Y3 = rr * (V - X3) - (S1 * J).dbl();
        F Z3 = ((Z + o.Z).square() - Z1Z1 - Z2Z2) * H;
        return {X3, Y3, Z3};
    }

    CurveJac add_affine(const Affine& o) const {
        if (o.inf) return *this;
        if (is_identity()) return from_affine(o);
        // mixed addition (Z2 = 1)
        F Z1Z1 = Z.square();
        F U2 = o.x * Z1Z1;
        F S2 = o.y * Z1Z1 * Z;
        if (X == U2) {
            if (Y == S2) return dbl();
            return identity();
        }
        F H = U2 - X;
        F HH = H.square();
        F I = HH.dbl().dbl();
        F J = H * I;
        F rr = (S2 - Y).dbl();
        F V = X * I;
        F X3 = rr.square() - J - V - V;
        F Y3 = rr * (V - X3) - (Y * J).dbl();
        F Z3 = (Z + H).square() - Z1Z1 - HH;
        return {X3, Y3, Z3};
    }

    // scalar given as canonical little-endian limbs; 4-bit wNAF
    CurveJac mul(const Limbs& k) const {
        if (is_identity() || u256::is_zero(k)) return identity();
        // signed digits in {-7,...,7}, odd
        int8_t naf[260];
        int len = 0;
        Limbs v = k;
        while (!u256::is_zero(v)) {
            int8_t d = 0;
            if (v[0] & 1) {
                d = (int8_t)(v[0] & 15);
                if (d > 8) d -= 16;
                // v -= d
                if (d >= 0) {
                    Limbs dd{(u64)d, 0, 0, 0};
                    u256::sub(v, v, dd);
                } else {
                    Limbs dd{(u64)(-d), 0, 0, 0};
                    u256::add(v, v, dd);
                }
            }
            naf[len++] = d;
            // v >>= 1
            for (int i = 0; i < 3; i++) v[i] = (v[i] >> 1) | (v[i + 1] << 63);
            v[3] >>= 1;
        }
        CurveJac tab[8];  // odd multiples 1P..15P
        tab[0] = *this;
        CurveJac p2 = dbl();
        for (int i = 1; i < 8; i++) tab[i] = tab[i - 1].add(p2);
        CurveJac acc = identity();
        for (int i = len - 1; i >= 0; i--) {
            acc = acc.dbl();
            int8_t d = naf[i];
            if (d > 0) acc = acc.add(tab[(d - 1) / 2]);
            else if (d < 0) acc = acc.add(tab[(-d - 1) / 2].neg());
        }
        return acc;
    }

    CurveJac mul(const Fr& k) const { return mul(k.to_limbs()); }
};

struct G1Params {
    static Fp b() { return Fp::from_u64(3); }
};
struct G2Params {
    static Fp2 b();  // 3 / xi
};

using G1Affine = CurveAffine<Fp>;
using G2Affine = CurveAffine<Fp2>;
using G1 = CurveJac<Fp, G1Params>;
using G2 = CurveJac<Fp2, G2Params>;

G1Affine g1_generator();
G2Affine g2_generator();

bool g1_on_curve(const G1Affine& p);
bool g2_on_curve(const G2Affine& p);
// full check for untrusted input: on curve and in the r-order subgroup
bool g1_valid(const G1Affine& p);
bool g2_valid(const G2Affine& p);

// Frobenius endomorphism on the twist, psi(x, y) = (gamma12 conj(x), gamma13 conj(y))
G2Affine g2_psi(const G2Affine& q);

// batch Jacobian -> affine with one shared inversion
template <typename F, typename P>
std::vector<CurveAffine<F>> batch_to_affine(const std::vector<CurveJac<F, P>>& pts) {
    std::vector<F> zs(pts.size());
    for (size_t i = 0; i < pts.size(); i++) zs[i] = pts[i].Z;
    batch_invert(zs);
    std::vector<CurveAffine<F>> out(pts.size());
    for (size_t i = 0; i < pts.size(); i++) {
        if (pts[i].is_identity()) continue;
        F zi2 = zs[i].square();
        out[i] = {pts[i].X * zi2, pts[i].Y * zi2 * zs[i], false};
    }
    return out;
}

// --- serialization -------------------------------------------------------
// G1: 32 bytes = x canonical LE; top byte bit7 = infinity, bit6 = y is odd.
// G2: 64 bytes = x.c0 then x.c1, flags in the top byte of x.c1.
// (both coordinates are < 2^254, leaving the two top bits of the final
// byte free)

void g1_serialize(const G1Affine& p, std::uint8_t out[32]);
std::optional<G1Affine> g1_deserialize(const std::uint8_t in[32]);
void g2_serialize(const G2Affine& p, std::uint8_t out[64]);
std::optional<G2Affine> g2_deserialize(const std::uint8_t in[64]);

}  // namespace zkpop
