#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <zkpop/bn254.hpp>
#include <zkpop/msm.hpp>

using namespace zkpop;

// deterministic scalar stream for tests
static Fr test_scalar(u64 seed) {
    std::uint8_t buf[64] = {0};
    u64 s = seed * 0x9e3779b97f4a7c15ULL + 1;
    for (int i = 0; i < 8; i++) {
        s ^= s << 13; s ^= s >> 7; s ^= s << 17;
        std::memcpy(buf + 8 * i, &s, 8);
    }
    return Fr::from_bytes_wide(buf);
}

static G1Affine random_g1(u64 seed) {
    return G1::from_affine(g1_generator()).mul(test_scalar(seed)).to_affine();
}
static G2Affine random_g2(u64 seed) {
    return G2::from_affine(g2_generator()).mul(test_scalar(seed ^ 0xabcdef)).to_affine();
}

TEST_CASE("generators are valid group members") {
    CHECK(g1_valid(g1_generator()));
    CHECK(g2_on_curve(g2_generator()));
    CHECK(g2_valid(g2_generator()));
    // order: r G = O
    CHECK(G1::from_affine(g1_generator()).mul(FrParams::MOD).is_identity());
    CHECK(G2::from_affine(g2_generator()).mul(FrParams::MOD).is_identity());
}

TEST_CASE("group laws") {
    G1 g = G1::from_affine(g1_generator());
    CHECK(g.add(g).to_affine() == g.dbl().to_affine());
    // (a+b)P = aP + bP
    Fr a = test_scalar(1), b = test_scalar(2);
    CHECK(g.mul(a + b).to_affine() == g.mul(a).add(g.mul(b)).to_affine());
    // mixed add agrees with full add
    G1 x = g.mul(a);
    CHECK(x.add_affine(g1_generator()).to_affine() == x.add(g).to_affine());
    // doubling via mixed add degenerate case
    CHECK(G1::from_affine(random_g1(5)).add_affine(random_g1(5)).to_affine() ==
          G1::from_affine(random_g1(5)).dbl().to_affine());
    // adding inverse gives identity
    auto p = random_g1(7);
    auto pn = p;
    pn.y = -pn.y;
    CHECK(G1::from_affine(p).add_affine(pn).is_identity());
    CHECK(g.mul(Fr::zero()).is_identity());
    CHECK(G1::identity().mul(a).is_identity());

    G2 h = G2::from_affine(g2_generator());
    CHECK(h.mul(a + b).to_affine() == h.mul(a).add(h.mul(b)).to_affine());
    CHECK(h.add(h).to_affine() == h.dbl().to_affine());
}

TEST_CASE("twist frobenius endomorphism acts as multiplication by p") {
    // on the r-order subgroup, psi(Q) = [p mod r] Q = [6 x^2] Q
    constexpr u64 X = 4965661367192848881ULL;
    u128 x2 = (u128)X * X;
    u128 sixx2 = x2 * 6;
    Limbs k{(u64)sixx2, (u64)(sixx2 >> 64), 0, 0};
    for (u64 s : {3u, 11u, 42u}) {
        G2Affine q = random_g2(s);
        CHECK(g2_psi(q) == G2::from_affine(q).mul(k).to_affine());
        CHECK(g2_on_curve(g2_psi(q)));
    }
}

TEST_CASE("point serialization round trips") {
    for (u64 s = 1; s <= 8; s++) {
        G1Affine p = random_g1(s);
        std::uint8_t buf[32];
        g1_serialize(p, buf);
        auto back = g1_deserialize(buf);
        REQUIRE(back.has_value());
        CHECK(*back == p);

        G2Affine q = random_g2(s);
        std::uint8_t buf2[64];
        g2_serialize(q, buf2);
        auto back2 = g2_deserialize(buf2);
        REQUIRE(back2.has_value());
        CHECK(*back2 == q);
    }
    // identity round trip
    std::uint8_t buf[64];
    g1_serialize(G1Affine{}, buf);
    CHECK(g1_deserialize(buf)->inf);
    g2_serialize(G2Affine{}, buf);
    CHECK(g2_deserialize(buf)->inf);
    // garbage: x with no curve solution or non-canonical field bytes
    std::memset(buf, 0xff, 64);
    CHECK(!g1_deserialize(buf).has_value());
    CHECK(!g2_deserialize(buf).has_value());
    // infinity flag with nonzero payload is malformed
    g1_serialize(random_g1(3), buf);
    buf[31] |= 0x80;
    CHECK(!g1_deserialize(buf).has_value());
}

TEST_CASE("subgroup check rejects twist points outside the r-order subgroup") {
    // find a point on the twist curve with small-x trial; curve order is
    // ~cofactor * r with a large cofactor, so a random curve point is
    // essentially never in the subgroup
    Fp2 x{Fp::from_u64(1), Fp::zero()};
    int found = 0, rejected = 0;
    for (u64 i = 1; i < 200 && found < 3; i++) {
        x.c0 = Fp::from_u64(i);
        Fp2 y2 = x.square() * x + G2Params::b();
        // try to take a sqrt via the serializer path: synthesize bytes
        Fp n = y2.c0.square() + y2.c1.square();
        auto sn = n.sqrt();
        if (!sn) continue;
        auto a = ((y2.c0 + *sn) * Fp::from_u64(2).inv()).sqrt();
        if (!a || a->is_zero()) continue;
        Fp2 y{*a, y2.c1 * (a->dbl()).inv()};
        if (!(y.square() == y2)) continue;
        found++;
        G2Affine q{x, y, false};
        REQUIRE(g2_on_curve(q));
        if (!g2_valid(q)) rejected++;
    }
    REQUIRE(found >= 1);
    CHECK(rejected == found);
}

TEST_CASE("msm matches naive sum") {
    std::vector<G1Affine> bases;
    std::vector<Fr> scalars;
    G1 naive = G1::identity();
    for (u64 i = 0; i < 300; i++) {
        bases.push_back(random_g1(i + 1));
        Fr s;
        switch (i % 5) {
            case 0: s = Fr::zero(); break;
            case 1: s = Fr::one(); break;
            case 2: s = Fr::from_u64(i); break;
            default: s = test_scalar(i + 1000);
        }
        scalars.push_back(s);
        naive = naive.add(G1::from_affine(bases.back()).mul(s));
    }
    CHECK(msm_g1(bases, scalars).to_affine() == naive.to_affine());

    std::vector<G2Affine> bases2;
    std::vector<Fr> scalars2;
    G2 naive2 = G2::identity();
    for (u64 i = 0; i < 40; i++) {
        bases2.push_back(random_g2(i + 1));
        scalars2.push_back(test_scalar(i + 2000));
        naive2 = naive2.add(G2::from_affine(bases2.back()).mul(scalars2.back()));
    }
    CHECK(msm_g2(bases2, scalars2).to_affine() == naive2.to_affine());
}

TEST_CASE("fixed-base table agrees with generic multiplication") {
    FixedBaseG1 fb(g1_generator());
    G1 g = G1::from_affine(g1_generator());
    for (u64 s : {1u, 2u, 255u, 256u, 77777u}) {
        Fr k = test_scalar(s);
        CHECK(fb.mul(k).to_affine() == g.mul(k).to_affine());
    }
    CHECK(fb.mul(Fr::zero()).is_identity());
    CHECK(fb.mul(Fr::one()).to_affine() == g1_generator());
}

TEST_CASE("batch affine conversion") {
    std::vector<G1> pts;
    for (u64 i = 0; i < 20; i++)
        pts.push_back(G1::from_affine(g1_generator()).mul(test_scalar(i)));
    pts.push_back(G1::identity());
    auto affine = batch_to_affine(pts);
    for (size_t i = 0; i < pts.size(); i++) CHECK(affine[i] == pts[i].to_affine());
}
