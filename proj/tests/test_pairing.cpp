#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <zkpop/pairing.hpp>

using namespace zkpop;

static Fr test_scalar(u64 seed) {
    std::uint8_t buf[64] = {0};
    u64 s = seed * 0x9e3779b97f4a7c15ULL + 1;
    for (int i = 0; i < 8; i++) {
        s ^= s << 13; s ^= s >> 7; s ^= s << 17;
        std::memcpy(buf + 8 * i, &s, 8);
    }
    return Fr::from_bytes_wide(buf);
}

static Fp12 fp12_pow_small(Fp12 base, u64 e) {
    Fp12 acc = Fp12::one();
    while (e) {
        if (e & 1) acc *= base;
        base = base.square();
        e >>= 1;
    }
    return acc;
}

TEST_CASE("pairing is non-degenerate") {
    Fp12 e = pairing(g1_generator(), g2_generator());
    CHECK(!e.is_one());
    // result lies in the r-order subgroup: e^r = 1
    CHECK(pow_gen(e, std::span<const u64>(FrParams::MOD.data(), 4)).is_one());
}

TEST_CASE("bilinearity in small exponents") {
    G1Affine p = g1_generator();
    G2Affine q = g2_generator();
    G1Affine p3 = G1::from_affine(p).mul(Fr::from_u64(3)).to_affine();
    G2Affine q5 = G2::from_affine(q).mul(Fr::from_u64(5)).to_affine();
    Fp12 base = pairing(p, q);
    CHECK(pairing(p3, q) == fp12_pow_small(base, 3));
    CHECK(pairing(p, q5) == fp12_pow_small(base, 5));
    CHECK(pairing(p3, q5) == fp12_pow_small(base, 15));
}

TEST_CASE("bilinearity in random exponents") {
    Fr a = test_scalar(11), b = test_scalar(12);
    G1Affine pa = G1::from_affine(g1_generator()).mul(a).to_affine();
    G2Affine qb = G2::from_affine(g2_generator()).mul(b).to_affine();
    Fp12 lhs = pairing(pa, qb);
    Fp12 rhs = pow_gen(pairing(g1_generator(), g2_generator()),
                       std::span<const u64>((a * b).to_limbs().data(), 4));
    CHECK(lhs == rhs);
    // moving the scalar across arguments
    CHECK(pairing(pa, g2_generator()) ==
          pairing(g1_generator(), G2::from_affine(g2_generator()).mul(a).to_affine()));
}

TEST_CASE("multiplicativity in the first argument") {
    G1Affine p1 = G1::from_affine(g1_generator()).mul(test_scalar(21)).to_affine();
    G1Affine p2 = G1::from_affine(g1_generator()).mul(test_scalar(22)).to_affine();
    G1Affine sum = G1::from_affine(p1).add_affine(p2).to_affine();
    G2Affine q = G2::from_affine(g2_generator()).mul(test_scalar(23)).to_affine();
    CHECK(pairing(sum, q) == pairing(p1, q) * pairing(p2, q));
}

TEST_CASE("pairing products and cancellation") {
    G1Affine p = G1::from_affine(g1_generator()).mul(test_scalar(31)).to_affine();
    G2Affine q = G2::from_affine(g2_generator()).mul(test_scalar(32)).to_affine();
    G1Affine pneg = p;
    pneg.y = -pneg.y;
    CHECK(pairing_product_is_one({{p, q}, {pneg, q}}));
    CHECK(!pairing_product_is_one({{p, q}, {p, q}}));
    // product over several pairs equals product of individual pairings
    G1Affine p2 = G1::from_affine(g1_generator()).mul(test_scalar(33)).to_affine();
    G2Affine q2 = G2::from_affine(g2_generator()).mul(test_scalar(34)).to_affine();
    Fp12 joint = final_exponentiation(miller_product({{p, q}, {p2, q2}}));
    CHECK(joint == pairing(p, q) * pairing(p2, q2));
}

TEST_CASE("identity pairs contribute trivially") {
    G2Affine q = g2_generator();
    CHECK(pairing(G1Affine{}, q).is_one());
    CHECK(pairing(g1_generator(), G2Affine{}).is_one());
    CHECK(pairing_product_is_one({{G1Affine{}, q}}));
}

// e(G1, G2) computed by an independent big-integer implementation; Fp slots in
// order c0.c0.c0, c0.c0.c1, c0.c1.c0, ..., c1.c2.c1, limbs little-endian
static const Limbs EPQ_REF[12] = {
    {0x8fca81000db9a1f5ULL, 0x1bf7f61d72631e26ULL, 0x510cd1707e8856f7ULL, 0x12c70e90e12b7874ULL},
    {0xb0552990967d4704ULL, 0xdeaf3f12aa31f28cULL, 0x6bc2f2ea2b897394ULL, 0x084f330485b09e86ULL},
    {0x96b819a358d34bdeULL, 0xbc27fdd375e3605fULL, 0xac9326b9558380e0ULL, 0x0e841c2ac18a4003ULL},
    {0xf6b5104c47c8c5d8ULL, 0x60224ee5ae15e66aULL, 0xeffa1938c754fe3cULL, 0x2067586885c3318eULL},
    {0xbdd02236e14b3636ULL, 0x86302996919d4bf4ULL, 0x409c4a394bc54268ULL, 0x01676555de427abcULL},
    {0x95e3594468f222c4ULL, 0xffc8747ea13e72daULL, 0x72d86df88674c270ULL, 0x2b03614464f04dd7ULL},
    {0x30c866276c565909ULL, 0xaf25d7859cfbc12cULL, 0x38fb30ddc8ac3bf0ULL, 0x2c53748bcd21a7c0ULL},
    {0xb2ab862411536104ULL, 0x669c026360e37cc5ULL, 0x6e710bbfbd2fd922ULL, 0x27ed208e7a0b55aeULL},
    {0x9d762b47edb3b54aULL, 0x17411fa48dba8d49ULL, 0xac462173d31d3d61ULL, 0x1ad9db1937fd72f4ULL},
    {0x64889c79fc038ee3ULL, 0x2b6efae421583875ULL, 0x2532c7c493d8e072ULL, 0x279db296f9d47929ULL},
    {0x17f0f6d08745a069ULL, 0x0ba4c70c94b29b5fULL, 0x029bd441d77c221fULL, 0x0dc26f240656bbe2ULL},
    {0x63729f5257628417ULL, 0xd6cc3bda6c4d5376ULL, 0x44d0f110405d3856ULL, 0x108c19d15f9446f7ULL},
};

TEST_CASE("generator pairing matches reference value") {
    Fp12 e = pairing(g1_generator(), g2_generator());
    const Fp2* slots[6] = {&e.c0.c0, &e.c0.c1, &e.c0.c2, &e.c1.c0, &e.c1.c1, &e.c1.c2};
    for (int i = 0; i < 6; i++) {
        CHECK(slots[i]->c0.to_limbs() == EPQ_REF[2 * i]);
        CHECK(slots[i]->c1.to_limbs() == EPQ_REF[2 * i + 1]);
    }
}
