#pragma once
#include <zkpop/r1cs.hpp>

#include <span>

namespace zkpop {

// A circuit bit: a linear combination that evaluates to 0 or 1.  Known
// constants are tracked so padding, IVs, and round constants fold away
// instead of spending constraints.
struct BitLC {
    LinComb lc;
    bool known = true;
    bool cval = false;

    static BitLC constant(bool v) { return {v ? LinComb::one() : LinComb::zero(), true, v}; }
    static BitLC wire(u32 idx) { return {LinComb::var(idx), false, false}; }
};

// 32-bit word as bits, index 0 = least significant
using WordBits = std::array<BitLC, 32>;
// byte-major bit string: bit (8k + b) is bit b (LSB first) of byte k
using BitVec = std::vector<BitLC>;

BitLC bit_not(const BitLC& a);
BitLC bit_xor(ConstraintSystem& cs, const BitLC& a, const BitLC& b);
BitLC bit_and(ConstraintSystem& cs, const BitLC& a, const BitLC& b);

WordBits word_constant(u32 v);
u32 word_value(const ConstraintSystem& cs, const WordBits& w);
WordBits word_rotr(const WordBits& w, int k);
WordBits word_shr(const WordBits& w, int k);
WordBits word_xor(ConstraintSystem& cs, const WordBits& a, const WordBits& b);
// sum modulo 2^32; folds to a constant when every input bit is known
WordBits word_add(ConstraintSystem& cs, std::span<const WordBits> ws);

// allocate bytes as boolean witness wires in byte-major bit order
BitVec alloc_bits_of(ConstraintSystem& cs, std::span<const u8> bytes);
// constant bytes as folded bits
BitVec const_bits_of(std::span<const u8> bytes);
// little-endian recomposition Sum 2^i * bit_i (for digest-to-field limbs)
LinComb limb_lc(std::span<const BitLC> bits);
// current assignment of a bit string, packed back into bytes
std::vector<u8> bits_value(const ConstraintSystem& cs, std::span<const BitLC> bits);

// SHA-256 over the circuit: compression with feedforward, plus the full
// padded-message hash.  Message length must be a whole number of bytes.
std::array<WordBits, 8> sha256_iv_gadget();
std::array<WordBits, 16> block_from_bits(std::span<const BitLC> bits512);
BitVec digest_bits(const std::array<WordBits, 8>& state);
std::array<WordBits, 8> sha256_compress_gadget(ConstraintSystem& cs,
                                               const std::array<WordBits, 8>& state,
                                               const std::array<WordBits, 16>& block);
std::array<WordBits, 8> sha256_message_gadget(ConstraintSystem& cs, const BitVec& message);

}  // namespace zkpop
