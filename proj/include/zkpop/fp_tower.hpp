#pragma once
// Extension tower over the BN254 base field:
//   Fp2  = Fp[u]  / (u^2 + 1)
//   Fp6  = Fp2[v] / (v^3 - xi),  xi = 9 + u
//   Fp12 = Fp6[w] / (w^2 - v)

#include <zkpop/ff.hpp>

#include <span>

namespace zkpop {

struct Fp2 {
    Fp c0, c1;

    static Fp2 zero() { return {}; }
    static Fp2 one() { return {Fp::one(), Fp::zero()}; }
    static Fp2 xi() { return {Fp::from_u64(9), Fp::one()}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
    bool operator==(const Fp2& o) const { return c0 == o.c0 && c1 == o.c1; }
    bool operator!=(const Fp2& o) const { return !(*this == o); }

    Fp2 operator+(const Fp2& o) const { return {c0 + o.c0, c1 + o.c1}; }
    Fp2 operator-(const Fp2& o) const { return {c0 - o.c0, c1 - o.c1}; }
    Fp2 operator-() const { return {-c0, -c1}; }
    Fp2 dbl() const { return {c0.dbl(), c1.dbl()}; }

    Fp2 operator*(const Fp2& o) const {
        // Karatsuba: 3 base multiplications
        Fp v0 = c0 * o.c0, v1 = c1 * o.c1;
        return {v0 - v1, (c0 + c1) * (o.c0 + o.c1) - v0 - v1};
    }

    Fp2 square() const {
        // (c0+c1)(c0-c1), 2*c0*c1
        Fp t = c0 * c1;
        return {(c0 + c1) * (c0 - c1), t + t};
    }

    Fp2 mul_fp(const Fp& s) const { return {c0 * s, c1 * s}; }

    Fp2 conj() const { return {c0, -c1}; }  // Frobenius of Fp2

    Fp2 inv() const {
        Fp norm_inv = (c0.square() + c1.square()).inv();
        return {c0 * norm_inv, -c1 * norm_inv};
    }

    // multiply by xi = 9 + u
    Fp2 mul_xi() const {
        Fp t0 = c0.dbl().dbl().dbl() + c0;  // 9 c0
        Fp t1 = c1.dbl().dbl().dbl() + c1;
        return {t0 - c1, t1 + c0};
    }

    Fp2& operator+=(const Fp2& o) { return *this = *this + o; }
    Fp2& operator-=(const Fp2& o) { return *this = *this - o; }
    Fp2& operator*=(const Fp2& o) { return *this = *this * o; }
};

struct Fp6 {
    Fp2 c0, c1, c2;  // c0 + c1 v + c2 v^2

    static Fp6 zero() { return {}; }
    static Fp6 one() { return {Fp2::one(), Fp2::zero(), Fp2::zero()}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }
    bool operator==(const Fp6& o) const {
        return c0 == o.c0 && c1 == o.c1 && c2 == o.c2;
    }

    Fp6 operator+(const Fp6& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
    Fp6 operator-(const Fp6& o) const { return {c0 - o.c0, c1 - o.c1, c2 - o.c2}; }
    Fp6 operator-() const { return {-c0, -c1, -c2}; }

    // multiply by v (cyclic shift with xi)
    Fp6 mul_v() const { return {c2.mul_xi(), c0, c1}; }

    Fp6 operator*(const Fp6& o) const {
        // Toom/Karatsuba style: 6 Fp2 multiplications
        Fp2 v0 = c0 * o.c0, v1 = c1 * o.c1, v2 = c2 * o.c2;
        Fp2 t0 = ((c1 + c2) * (o.c1 + o.c2) - v1 - v2).mul_xi() + v0;
        Fp2 t1 = (c0 + c1) * (o.c0 + o.c1) - v0 - v1 + v2.mul_xi();
        Fp2 t2 = (c0 + c2) * (o.c0 + o.c2) - v0 - v2 + v1;
        return {t0, t1, t2};
    }

    Fp6 square() const { return *this * *this; }

    Fp6 mul_fp2(const Fp2& s) const { return {c0 * s, c1 * s, c2 * s}; }

    Fp6 inv() const {
        // standard cubic-extension inversion
        Fp2 a = c0.square() - (c1 * c2).mul_xi();
        Fp2 b = c2.square().mul_xi() - c0 * c1;
        Fp2 c = c1.square() - c0 * c2;
        Fp2 t = ((c2 * b + c1 * c).mul_xi() + c0 * a).inv();
        return {a * t, b * t, c * t};
    }
};

struct Fp12 {
    Fp6 c0, c1;  // c0 + c1 w

    static Fp12 zero() { return {}; }
    static Fp12 one() { return {Fp6::one(), Fp6::zero()}; }

    bool operator==(const Fp12& o) const { return c0 == o.c0 && c1 == o.c1; }
    bool operator!=(const Fp12& o) const { return !(*this == o); }
    bool is_one() const { return *this == one(); }

    Fp12 operator+(const Fp12& o) const { return {c0 + o.c0, c1 + o.c1}; }
    Fp12 operator-(const Fp12& o) const { return {c0 - o.c0, c1 - o.c1}; }

    Fp12 operator*(const Fp12& o) const {
        Fp6 v0 = c0 * o.c0, v1 = c1 * o.c1;
        return {v0 + v1.mul_v(), (c0 + c1) * (o.c0 + o.c1) - v0 - v1};
    }

    Fp12 square() const {
        // complex squaring in the quadratic extension
        Fp6 t = c0 * c1;
        Fp6 a = (c0 + c1) * (c0 + c1.mul_v()) - t - t.mul_v();
        return {a, t + t};
    }

    Fp12 conj() const { return {c0, -c1}; }  // = f^(p^6), inverse on the unit cyclotomic subgroup

    Fp12 inv() const {
        Fp6 t = (c0.square() - c1.square().mul_v()).inv();
        return {c0 * t, -(c1 * t)};
    }

    Fp12& operator*=(const Fp12& o) { return *this = *this * o; }

    // f^p; gamma constants supplied by the pairing module
    Fp12 frobenius() const;
};

// generic square-and-multiply over limb-span exponents (MSB scan)
template <typename T>
T pow_gen(const T& base, std::span<const u64> e) {
    T acc = T::one();
    bool started = false;
    for (size_t w = e.size(); w-- > 0;) {
        for (int b = 63; b >= 0; b--) {
            if (started) acc = acc.square();
            if ((e[w] >> b) & 1) {
                if (started)
                    acc *= base;
                else {
                    acc = base;
                    started = true;
                }
            }
        }
    }
    return acc;
}

}  // namespace zkpop
