#pragma once
#include <zkpop/ff.hpp>

#include <optional>
#include <string_view>
#include <vector>

namespace zkpop {

// Twisted Edwards curve a x^2 + y^2 = 1 + d x^2 y^2 over Fr (the BN254 scalar
// field), so commitments on it can be recomputed inside the proof circuit.
// a = 168700 is a square and d = 168696 is a non-square mod r, which makes the
// extended-coordinate addition law complete.  The full group has order
// 8 * JUB_ORDER with JUB_ORDER prime; all protocol points live in the
// prime-order subgroup.
inline Fr jub_a() { return Fr::from_u64(168700); }
inline Fr jub_d() { return Fr::from_u64(168696); }

// subgroup order (~2^251)
struct JubOrderParams {
    static constexpr Limbs MOD = {0x677297dc392126f1ULL, 0xab3eedb83920ee0aULL,
                                  0x370a08b6d0302b0bULL, 0x060c89ce5c263405ULL};
    static constexpr Limbs R2 = {0x35e44abee7ecb21eULL, 0x74646cacf5f84ec4ULL,
                                 0xe472df203faa158fULL, 0x0445b524f1ba50a8ULL};
    static constexpr Limbs R1 = {0x073315dea08f9c76ULL, 0xe7acffc6a098f24bULL,
                                 0xf85a9201d818f015ULL, 0x01f16424e1bb7724ULL};
    static constexpr u64 INV = 0x532ce5aebc48f5efULL;
    static constexpr u32 TWO_ADICITY = 4;
    static constexpr u64 GENERATOR = 19;
};
// scalars modulo the subgroup order (commitment openings, blinding factors)
using Fl = Fe<JubOrderParams>;

struct JubAffine {
    Fr x = Fr::zero();
    Fr y = Fr::one();

    bool is_identity() const { return x.is_zero() && y.is_one(); }
    bool operator==(const JubAffine&) const = default;
};

// extended coordinates (X : Y : Z : T), T = X Y / Z
struct JubExt {
    Fr X = Fr::zero(), Y = Fr::one(), Z = Fr::one(), T = Fr::zero();

    static JubExt identity() { return {}; }
    static JubExt from_affine(const JubAffine& p) { return {p.x, p.y, Fr::one(), p.x * p.y}; }

    JubExt add(const JubExt& o) const;
    JubExt dbl() const;
    JubExt neg() const { return {-X, Y, Z, -T}; }
    JubExt mul(const Limbs& k) const;  // 4-bit windowed
    JubExt mul(const Fl& k) const { return mul(k.to_limbs()); }
    JubAffine to_affine() const;
    bool is_identity() const { return X.is_zero() && Y == Z; }
};

JubAffine jub_generator();  // generator of the prime-order subgroup
bool jub_on_curve(const JubAffine& p);
bool jub_in_subgroup(const JubAffine& p);  // on curve and order divides JUB_ORDER

// 32-byte encoding: y little-endian, top bit carries the parity of x
std::array<u8, 32> jub_serialize(const JubAffine& p);
// rejects non-canonical y, off-curve values, and a stray sign on x = 0
std::optional<JubAffine> jub_deserialize(const std::array<u8, 32>& bytes);

// Deterministic nothing-up-my-sleeve subgroup point: SHA-256(tag, index, ctr)
// candidates for y, decompressed with even x and cleared of the cofactor.
JubAffine jub_hash_to_subgroup(std::string_view tag, u32 index);

// window tables for repeated multiplication by one fixed point
struct JubFixedBase {
    static constexpr int WINDOW = 8;
    std::vector<JubExt> table;  // 32 windows x 255 odd multiples

    explicit JubFixedBase(const JubAffine& base);
    JubExt mul(const Limbs& k) const;
    JubExt mul(const Fl& k) const { return mul(k.to_limbs()); }
};

}  // namespace zkpop
