#include <zkpop/sha256_gadget.hpp>

#include <stdexcept>

namespace zkpop {

static bool bit_value(const ConstraintSystem& cs, const BitLC& b) {
    return b.known ? b.cval : cs.eval(b.lc).is_one();
}

BitLC bit_not(const BitLC& a) {
    if (a.known) return BitLC::constant(!a.cval);
    return {LinComb::one() - a.lc, false, false};
}

BitLC bit_xor(ConstraintSystem& cs, const BitLC& a, const BitLC& b) {
    if (a.known && b.known) return BitLC::constant(a.cval != b.cval);
    if (a.known) return a.cval ? bit_not(b) : b;
    if (b.known) return b.cval ? bit_not(a) : a;
    bool rv = bit_value(cs, a) != bit_value(cs, b);
    u32 r = cs.alloc(rv ? Fr::one() : Fr::zero());
    // 2a * b = a + b - r  =>  r = a XOR b; r is boolean whenever a and b are
    cs.enforce(a.lc.scaled(Fr::from_u64(2)), b.lc, a.lc + b.lc - LinComb::var(r));
    return BitLC::wire(r);
}

BitLC bit_and(ConstraintSystem& cs, const BitLC& a, const BitLC& b) {
    if (a.known) return a.cval ? b : BitLC::constant(false);
    if (b.known) return b.cval ? a : BitLC::constant(false);
    return BitLC::wire(cs.mul(a.lc, b.lc));
}

static BitLC bit_or(ConstraintSystem& cs, const BitLC& a, const BitLC& b) {
    if (a.known) return a.cval ? BitLC::constant(true) : b;
    if (b.known) return b.cval ? BitLC::constant(true) : a;
    u32 t = cs.mul(a.lc, b.lc);
    return {a.lc + b.lc - LinComb::var(t), false, false};
}

// e ? f : g, one constraint: e * (f - g) = r - g
static BitLC bit_ch(ConstraintSystem& cs, const BitLC& e, const BitLC& f, const BitLC& g) {
    if (e.known) return e.cval ? f : g;
    if (f.known && g.known && f.cval == g.cval) return f;
    bool rv = bit_value(cs, e) ? bit_value(cs, f) : bit_value(cs, g);
    u32 r = cs.alloc(rv ? Fr::one() : Fr::zero());
    cs.enforce(e.lc, f.lc - g.lc, LinComb::var(r) - g.lc);
    return BitLC::wire(r);
}

// majority of three bits; two constraints in the fully-variable case:
// t = b*c, then a * (b + c - 2t) = r - t
static BitLC bit_maj(ConstraintSystem& cs, const BitLC& a, const BitLC& b, const BitLC& c) {
    if (b.known) return b.cval ? bit_or(cs, a, c) : bit_and(cs, a, c);
    if (c.known) return c.cval ? bit_or(cs, a, b) : bit_and(cs, a, b);
    if (a.known) return a.cval ? bit_or(cs, b, c) : bit_and(cs, b, c);
    bool av = bit_value(cs, a), bv = bit_value(cs, b), cv = bit_value(cs, c);
    u32 t = cs.mul(b.lc, c.lc);
    u32 r = cs.alloc((av + bv + cv) >= 2 ? Fr::one() : Fr::zero());
    cs.enforce(a.lc, b.lc + c.lc - LinComb::var(t).scaled(Fr::from_u64(2)),
               LinComb::var(r) - LinComb::var(t));
    return BitLC::wire(r);
}

WordBits word_constant(u32 v) {
    WordBits out;
    for (int i = 0; i < 32; i++) out[i] = BitLC::constant((v >> i) & 1);
    return out;
}

u32 word_value(const ConstraintSystem& cs, const WordBits& w) {
    u32 v = 0;
    for (int i = 0; i < 32; i++) v |= (u32)bit_value(cs, w[i]) << i;
    return v;
}

WordBits word_rotr(const WordBits& w, int k) {
    WordBits out;
    for (int i = 0; i < 32; i++) out[i] = w[(i + k) % 32];
    return out;
}

WordBits word_shr(const WordBits& w, int k) {
    WordBits out;
    for (int i = 0; i < 32; i++) out[i] = i + k < 32 ? w[i + k] : BitLC::constant(false);
    return out;
}

WordBits word_xor(ConstraintSystem& cs, const WordBits& a, const WordBits& b) {
    WordBits out;
    for (int i = 0; i < 32; i++) out[i] = bit_xor(cs, a[i], b[i]);
    return out;
}

WordBits word_add(ConstraintSystem& cs, std::span<const WordBits> ws) {
    u64 const_sum = 0;
    LinComb sum;
    bool any_var = false;
    for (const WordBits& w : ws) {
        Fr pow = Fr::one();
        for (int i = 0; i < 32; i++) {
            if (w[i].known) {
                const_sum += (u64)w[i].cval << i;
            } else {
                sum += w[i].lc.scaled(pow);
                any_var = true;
            }
            pow = pow.dbl();
        }
    }
    if (!any_var) return word_constant((u32)const_sum);
    sum += LinComb::constant(Fr::from_u64(const_sum));
    u32 nbits = 32;
    while ((u64)ws.size() << 32 > (1ULL << nbits)) nbits++;
    std::vector<u32> bits = cs.decompose(sum, nbits);
    WordBits out;
    for (int i = 0; i < 32; i++) out[i] = BitLC::wire(bits[i]);
    return out;
}

BitVec alloc_bits_of(ConstraintSystem& cs, std::span<const u8> bytes) {
    BitVec out;
    out.reserve(bytes.size() * 8);
    for (u8 byte : bytes)
        for (int b = 0; b < 8; b++) out.push_back(BitLC::wire(cs.alloc_bool((byte >> b) & 1)));
    return out;
}

BitVec const_bits_of(std::span<const u8> bytes) {
    BitVec out;
    out.reserve(bytes.size() * 8);
    for (u8 byte : bytes)
        for (int b = 0; b < 8; b++) out.push_back(BitLC::constant((byte >> b) & 1));
    return out;
}

LinComb limb_lc(std::span<const BitLC> bits) {
    LinComb out;
    Fr pow = Fr::one();
    for (const BitLC& b : bits) {
        out += b.lc.scaled(pow);
        pow = pow.dbl();
    }
    return out;
}

std::vector<u8> bits_value(const ConstraintSystem& cs, std::span<const BitLC> bits) {
    std::vector<u8> out((bits.size() + 7) / 8, 0);
    for (size_t i = 0; i < bits.size(); i++)
        if (bit_value(cs, bits[i])) out[i / 8] |= (u8)(1 << (i % 8));
    return out;
}

static const u32 SHA_K[64] = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
    0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
    0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
    0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
    0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
    0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
    0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
    0xc67178f2};

std::array<WordBits, 8> sha256_iv_gadget() {
    static const u32 iv[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                              0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
    std::array<WordBits, 8> out;
    for (int i = 0; i < 8; i++) out[i] = word_constant(iv[i]);
    return out;
}

std::array<WordBits, 16> block_from_bits(std::span<const BitLC> bits512) {
    if (bits512.size() != 512) throw std::invalid_argument("sha block needs exactly 512 bits");
    std::array<WordBits, 16> out;
    for (int w = 0; w < 16; w++)
        for (int i = 0; i < 32; i++) {
            // word w loads bytes 4w..4w+3 big-endian
            int byte = 4 * w + 3 - i / 8;
            out[w][i] = bits512[8 * byte + i % 8];
        }
    return out;
}

BitVec digest_bits(const std::array<WordBits, 8>& state) {
    BitVec out(256);
    for (int w = 0; w < 8; w++)
        for (int i = 0; i < 32; i++) {
            int byte = 4 * w + 3 - i / 8;
            out[8 * byte + i % 8] = state[w][i];
        }
    return out;
}

static WordBits big_sigma(ConstraintSystem& cs, const WordBits& x, int r1, int r2, int r3) {
    return word_xor(cs, word_xor(cs, word_rotr(x, r1), word_rotr(x, r2)), word_rotr(x, r3));
}

std::array<WordBits, 8> sha256_compress_gadget(ConstraintSystem& cs,
                                               const std::array<WordBits, 8>& state,
                                               const std::array<WordBits, 16>& block) {
    std::array<WordBits, 64> w;
    std::copy(block.begin(), block.end(), w.begin());
    for (int t = 16; t < 64; t++) {
        WordBits s0 = word_xor(cs, word_xor(cs, word_rotr(w[t - 15], 7), word_rotr(w[t - 15], 18)),
                               word_shr(w[t - 15], 3));
        WordBits s1 = word_xor(cs, word_xor(cs, word_rotr(w[t - 2], 17), word_rotr(w[t - 2], 19)),
                               word_shr(w[t - 2], 10));
        w[t] = word_add(cs, std::array{w[t - 16], s0, w[t - 7], s1});
    }
    WordBits a = state[0], b = state[1], c = state[2], d = state[3];
    WordBits e = state[4], f = state[5], g = state[6], h = state[7];
    for (int t = 0; t < 64; t++) {
        WordBits S1 = big_sigma(cs, e, 6, 11, 25);
        WordBits ch, mj;
        for (int i = 0; i < 32; i++) ch[i] = bit_ch(cs, e[i], f[i], g[i]);
        WordBits S0 = big_sigma(cs, a, 2, 13, 22);
        for (int i = 0; i < 32; i++) mj[i] = bit_maj(cs, a[i], b[i], c[i]);
        WordBits k = word_constant(SHA_K[t]);
        WordBits new_e = word_add(cs, std::array{d, h, S1, ch, k, w[t]});
        WordBits new_a = word_add(cs, std::array{h, S1, ch, k, w[t], S0, mj});
        h = g, g = f, f = e, e = new_e, d = c, c = b, b = a, a = new_a;
    }
    std::array<WordBits, 8> cur = {a, b, c, d, e, f, g, h};
    std::array<WordBits, 8> out;
    for (int i = 0; i < 8; i++) out[i] = word_add(cs, std::array{state[i], cur[i]});
    return out;
}

std::array<WordBits, 8> sha256_message_gadget(ConstraintSystem& cs, const BitVec& message) {
    if (message.size() % 8 != 0) throw std::invalid_argument("message must be whole bytes");
    u64 len = message.size();
    BitVec padded = message;
    u8 stop = 0x80;
    BitVec tail = const_bits_of({&stop, 1});
    padded.insert(padded.end(), tail.begin(), tail.end());
    while (padded.size() % 512 != 448) padded.push_back(BitLC::constant(false));
    u8 len_be[8];
    for (int i = 0; i < 8; i++) len_be[i] = (u8)(len >> (8 * (7 - i)));
    tail = const_bits_of({len_be, 8});
    padded.insert(padded.end(), tail.begin(), tail.end());

    std::array<WordBits, 8> state = sha256_iv_gadget();
    for (size_t off = 0; off < padded.size(); off += 512)
        state = sha256_compress_gadget(cs, state, block_from_bits({padded.data() + off, 512}));
    return state;
}

}  // namespace zkpop
