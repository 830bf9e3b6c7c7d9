#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <zkpop/merkle.hpp>
#include <zkpop/poseidon.hpp>
#include <zkpop/sha256.hpp>

using namespace zkpop;

static Fr fr_dec(const char* s) {
    Fr acc = Fr::zero();
    for (; *s; s++) acc = acc * Fr::from_u64(10) + Fr::from_u64((u64)(*s - '0'));
    return acc;
}

static std::string hex(const Digest& d) {
    static const char* k = "0123456789abcdef";
    std::string out;
    for (u8 b : d) {
        out += k[b >> 4];
        out += k[b & 0xf];
    }
    return out;
}

TEST_CASE("sha256 matches standard vectors") {
    CHECK(hex(sha256("")) == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(hex(sha256("abc")) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(hex(sha256("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq")) ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    // incremental updates agree with one-shot hashing
    Digest once = sha256("split into pieces");
    Digest inc = Sha256().update("split ").update("into ").update("pieces").final();
    CHECK(once == inc);
}

TEST_CASE("poseidon round constants derive deterministically") {
    const auto& P = PoseidonParams::get();
    CHECK(P.rc[0] == fr_dec("16402699008504075645928080334725079338442327945455062448110402889889418313604"));
    CHECK(P.rc[1] == fr_dec("14426674942025549165097920487008551203328663453233642116769463923418812670388"));
    CHECK(P.rc[194] == fr_dec("7479521259419736382285514749120956637639932360440743152611018735431397252902"));
}

TEST_CASE("poseidon permutation matches frozen vectors") {
    std::array<Fr, 3> st = {Fr::zero(), Fr::one(), Fr::from_u64(2)};
    poseidon_permute(st);
    CHECK(st[0] == fr_dec("10299063383637528951003574950554630938281344251191472876616070958764685213549"));
    CHECK(st[1] == fr_dec("6674193813412282402726828793292116885394101521273036956255528370463723975321"));
    CHECK(st[2] == fr_dec("2919422067822400114822102242190350265077102710742423674928827651385817326466"));

    CHECK(poseidon2(Fr::one(), Fr::from_u64(2)) ==
          fr_dec("10299063383637528951003574950554630938281344251191472876616070958764685213549"));
    CHECK(poseidon2(Fr::zero(), Fr::zero()) ==
          fr_dec("16948412565160217070010505538206208421926554975779596139396006495575630601950"));
    Fr max = Fr::zero() - Fr::one();
    CHECK(poseidon2(max, max) ==
          fr_dec("2508962754633474778066485272534575030697278560625173345974435149914229839904"));
}

TEST_CASE("poseidon is not obviously degenerate") {
    // argument order matters and small input changes move the output
    CHECK(poseidon2(Fr::one(), Fr::from_u64(2)) != poseidon2(Fr::from_u64(2), Fr::one()));
    CHECK(poseidon2(Fr::one(), Fr::from_u64(2)) != poseidon2(Fr::one(), Fr::from_u64(3)));
}

static std::vector<Digest> byte_leaves(int n) {
    std::vector<Digest> out;
    for (int j = 0; j < n; j++) {
        u8 b = (u8)j;
        out.push_back(sha256(std::span<const u8>(&b, 1)));
    }
    return out;
}

TEST_CASE("merkle root matches frozen vector") {
    auto leaves = byte_leaves(8);
    MerkleTree t = MerkleTree::build(leaves);
    CHECK(t.leaf(0) == fr_dec("19206692769040758426896102366806172329836030251983447390514785337497586086188"));
    CHECK(t.root() == fr_dec("19163267083488800125769791136420797852827605775024240767051869904640002213911"));

    MerklePath p = t.open(5);
    REQUIRE(p.siblings.size() == 3);
    CHECK(p.siblings[0] == fr_dec("16198236979903474479147528275811080418999431717716383426761719778942217715450"));
    CHECK(p.siblings[1] == fr_dec("591038880996494734710976909373512714683315659679242509773306702731956177442"));
    CHECK(p.siblings[2] == fr_dec("4565947399158691740392117609827960117556611270910486620820321158121152179202"));
}

TEST_CASE("two-leaf tree is a single compression") {
    auto leaves = byte_leaves(2);
    MerkleTree t = MerkleTree::build(leaves);
    CHECK(t.root() == poseidon2(poseidon_leaf(leaves[0]), poseidon_leaf(leaves[1])));
}

TEST_CASE("every inclusion path verifies and corruption fails") {
    auto leaves = byte_leaves(16);
    MerkleTree t = MerkleTree::build(leaves);
    for (u32 i = 0; i < 16; i++) {
        MerklePath p = t.open(i);
        CHECK(merkle_verify(t.root(), t.leaf(i), p));
        // corrupt one sibling
        MerklePath bad = p;
        bad.siblings[i % bad.siblings.size()] = bad.siblings[i % bad.siblings.size()] + Fr::one();
        CHECK(!merkle_verify(t.root(), t.leaf(i), bad));
        // wrong index reorders the hashing and must fail
        MerklePath shifted = p;
        shifted.index ^= 1;
        CHECK(!merkle_verify(t.root(), t.leaf(i), shifted));
    }
    // wrong leaf against a valid path
    CHECK(!merkle_verify(t.root(), t.leaf(1), t.open(0)));
}

TEST_CASE("non-power-of-two leaf counts are rejected") {
    auto leaves = byte_leaves(6);
    CHECK_THROWS_AS(MerkleTree::build(leaves), std::invalid_argument);
    CHECK_THROWS_AS(MerkleTree::build(std::span<const Digest>{}), std::invalid_argument);
}
