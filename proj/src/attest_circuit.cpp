#include <zkpop/attest_circuit.hpp>

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace zkpop {

// ---------------------------------------------------------------- config ---

void CircuitConfig::validate() const {
    if (m != 6 && m != 12 && m != 24)
        throw std::invalid_argument("circuit config: m must be 6, 12, or 24");
    if (k < 1 || k > chain_length)
        throw std::invalid_argument("circuit config: need 1 <= k <= chain_length");
    if (n_bits != 16)
        throw std::invalid_argument("circuit config: the fixed-point encoding pins n_bits to 16");
    if (bounds_mult < 1 || bounds_mult > 8)
        throw std::invalid_argument("circuit config: bounds_mult must be in [1, 8]");
    if (chain_length < 2 || !std::has_single_bit(chain_length))
        throw std::invalid_argument("circuit config: chain_length must be a power of two >= 2");
    if (feature_min_ms != 0.0 || feature_max_ms != 1000.0)
        throw std::invalid_argument("circuit config: the feature domain is fixed at [0, 1000] ms");
    if (d_min_ms == 0 || d_min_ms >= (1ULL << 48))
        throw std::invalid_argument("circuit config: d_min_ms must be positive and fit 48 bits");
}

u32 CircuitConfig::depth() const { return static_cast<u32>(std::countr_zero(chain_length)); }

u32 encode_fixed_point(double value_ms) {
    if (!(value_ms >= 0.0 && value_ms <= 1000.0))
        throw std::out_of_range("encode_fixed_point: value outside [0, 1000] ms");
    // default rounding mode is to-nearest, ties to even
    return static_cast<u32>(std::nearbyint(value_ms * 65535.0 / 1000.0));
}

double decode_fixed_point(u32 scalar) { return static_cast<double>(scalar) * 1000.0 / 65535.0; }

// -------------------------------------------------------------- instances ---

std::vector<Fr> PublicInputs::to_vector() const {
    std::vector<Fr> v;
    v.reserve(6 + mu.size() + sigma.size());
    v.push_back(h_prev_lo);
    v.push_back(h_prev_hi);
    v.push_back(h_lo);
    v.push_back(h_hi);
    v.push_back(swf_root);
    v.push_back(duration_s);
    for (const Fr& x : mu) v.push_back(x);
    for (const Fr& x : sigma) v.push_back(x);
    return v;
}

PublicInputs PublicInputs::from_checkpoint(const Checkpoint& cp, std::span<const u32> mu_fp,
                                           std::span<const u32> sigma_fp) {
    if (mu_fp.size() != sigma_fp.size())
        throw std::invalid_argument("public inputs: mu and sigma lengths differ");
    PublicInputs pub;
    std::tie(pub.h_prev_lo, pub.h_prev_hi) = digest_to_fields(cp.prev_hash);
    std::tie(pub.h_lo, pub.h_hi) = digest_to_fields(cp.hash);
    pub.swf_root = cp.swf_root;
    pub.duration_s = Fr::from_u64(cp.duration);
    pub.mu.reserve(mu_fp.size());
    pub.sigma.reserve(sigma_fp.size());
    for (u32 x : mu_fp) pub.mu.push_back(Fr::from_u64(x));
    for (u32 x : sigma_fp) pub.sigma.push_back(Fr::from_u64(x));
    return pub;
}

static u32 feature_scalar(const Fl& v) {
    Limbs l = v.to_limbs();
    if (l[1] || l[2] || l[3] || l[0] >= (1ULL << 16))
        throw std::invalid_argument("witness: feature scalar exceeds 16 bits");
    return static_cast<u32>(l[0]);
}

PrivateWitness PrivateWitness::from_evidence(const CircuitConfig& cfg, const SWFChain& chain,
                                             const SWFCommitment& swf, const Checkpoint& cp,
                                             u64 tau_prev_ms) {
    cfg.validate();
    if (cp.features.size() != cfg.m || cp.randomness.size() != cfg.m)
        throw std::invalid_argument("witness: checkpoint feature count does not match config");
    if (chain.states.size() != cfg.chain_length)
        throw std::invalid_argument("witness: chain length does not match config");

    PrivateWitness wit;
    wit.features.reserve(cfg.m);
    for (const Fl& f : cp.features) wit.features.push_back(feature_scalar(f));
    wit.r_agg = Fl::zero();
    for (const Fl& r : cp.randomness) wit.r_agg = wit.r_agg + r;
    wit.content_delta = cp.content_delta;
    wit.tau_ms = cp.timestamp_ms;
    wit.tau_prev_ms = tau_prev_ms;

    SamplePlan plan = sample_positions(swf.root, cfg.k, cfg.chain_length);
    wit.samples.reserve(plan.indices.size());
    for (u32 j : plan.indices) {
        SampleWitness sw;
        sw.cur_path = swf.tree.open(j - 1).siblings;
        if (j >= 2) {
            sw.prev_state = chain.states[j - 2];
            sw.prev_path = swf.tree.open(j - 2).siblings;
        } else {
            // the link starts at the seed state, which has no leaf; the
            // previous-position Merkle check is waived in-circuit
            sw.prev_state = chain.seed_state;
            sw.prev_path.assign(cfg.depth(), Fr::zero());
        }
        wit.samples.push_back(std::move(sw));
    }
    return wit;
}

// ---------------------------------------------------- building-block gadgets ---

static LinComb sbox5(ConstraintSystem& cs, const LinComb& x) {
    if (x.is_constant()) {
        Fr v = x.constant_value();
        Fr v2 = v * v;
        return LinComb::constant(v2 * v2 * v);
    }
    u32 x2 = cs.mul(x, x);
    u32 x4 = cs.mul(LinComb::var(x2), LinComb::var(x2));
    u32 x5 = cs.mul(LinComb::var(x4), x);
    return LinComb::var(x5);
}

LinComb poseidon2_gadget(ConstraintSystem& cs, const LinComb& a, const LinComb& b) {
    const PoseidonParams& P = PoseidonParams::get();
    constexpr int half = PoseidonParams::R_F / 2;
    std::array<LinComb, 3> st = {LinComb::zero(), a, b};
    for (int rnd = 0; rnd < PoseidonParams::R_F + PoseidonParams::R_P; rnd++) {
        for (int i = 0; i < 3; i++) st[i] += LinComb::constant(P.rc[rnd * 3 + i]);
        bool full = rnd < half || rnd >= half + PoseidonParams::R_P;
        st[0] = sbox5(cs, st[0]);
        if (full) {
            st[1] = sbox5(cs, st[1]);
            st[2] = sbox5(cs, st[2]);
        }
        std::array<LinComb, 3> next;
        for (int i = 0; i < 3; i++) {
            LinComb acc = st[0].scaled(P.mds[i][0]);
            acc += st[1].scaled(P.mds[i][1]);
            acc += st[2].scaled(P.mds[i][2]);
            next[i] = std::move(acc);
        }
        st = std::move(next);
    }
    return st[0];
}

void enforce_le_const(ConstraintSystem& cs, std::span<const u32> bits, const Limbs& bound) {
    if (bits.empty() || bits.size() > 256)
        throw std::invalid_argument("enforce_le_const: need 1..256 bits");
    // Walk from the most significant bit, maintaining
    //   e = "every bit so far equals the bound's bit"
    //   g = "some earlier bit exceeded the bound's 0"
    // Where the bound bit is 1, a lesser value is welcome, so e just narrows
    // to e & bit.  Where it is 0, e & bit means the value pulled ahead, so
    // that product joins g and leaves e.  One product per bit; at the end g
    // must be zero.  (g is a sum of indicators of mutually exclusive events,
    // so it is 0 or 1 and the final equality is exact.)
    LinComb e = LinComb::one();
    LinComb g = LinComb::zero();
    for (size_t idx = bits.size(); idx-- > 0;) {
        bool cbit = (bound[idx / 64] >> (idx % 64)) & 1;
        LinComb v = LinComb::var(bits[idx]);
        if (e.is_constant()) {  // only before the first product row: e == 1
            if (cbit) {
                e = v;
            } else {
                g += v;
                e = LinComb::one() - v;
            }
            continue;
        }
        u32 p = cs.mul(e, v);
        if (cbit) {
            e = LinComb::var(p);
        } else {
            g += LinComb::var(p);
            e = e - LinComb::var(p);
        }
    }
    cs.enforce_equal(g, LinComb::zero());
}

std::vector<u32> decompose_canonical(ConstraintSystem& cs, const LinComb& x) {
    std::vector<u32> bits = cs.decompose(x, 254);
    Limbs bound = FrParams::MOD;
    bound[0] -= 1;  // modulus is odd, so no borrow
    enforce_le_const(cs, bits, bound);
    return bits;
}

namespace {

// point as coordinate combinations; starts at the identity (0, 1)
struct PointLC {
    LinComb x = LinComb::zero();
    LinComb y = LinComb::one();
};

// wire w with w * den = num; the assignment divides (inv(0) = 0 keeps
// synthesis total — an unsatisfiable witness stays representable)
u32 alloc_ratio(ConstraintSystem& cs, const LinComb& num, const LinComb& den) {
    u32 w = cs.alloc(cs.eval(num) * cs.eval(den).inv());
    cs.enforce(LinComb::var(w), den, num);
    return w;
}

// acc + bit * P for a fixed point P, via the complete twisted Edwards
// addition (denominators never vanish, identity included), then a
// coordinate-wise select.  While acc is still constant — before the first
// variable bit lands — the sum folds and the select is purely linear.
PointLC edwards_cond_add_const(ConstraintSystem& cs, const PointLC& acc, const JubAffine& p,
                               const LinComb& bit) {
    if (acc.x.is_constant() && acc.y.is_constant()) {
        JubAffine a{acc.x.constant_value(), acc.y.constant_value()};
        JubAffine s = JubExt::from_affine(a).add(JubExt::from_affine(p)).to_affine();
        return {acc.x + bit.scaled(s.x - a.x), acc.y + bit.scaled(s.y - a.y)};
    }
    Fr duv = jub_d() * p.x * p.y;
    u32 t = cs.mul(acc.x, acc.y);
    u32 x3 = alloc_ratio(cs, acc.x.scaled(p.y) + acc.y.scaled(p.x),
                         LinComb::one() + LinComb::var(t, duv));
    u32 y3 = alloc_ratio(cs, acc.y.scaled(p.y) - acc.x.scaled(jub_a() * p.x),
                         LinComb::one() - LinComb::var(t, duv));
    u32 mx = cs.mul(bit, LinComb::var(x3) - acc.x);
    u32 my = cs.mul(bit, LinComb::var(y3) - acc.y);
    return {acc.x + LinComb::var(mx), acc.y + LinComb::var(my)};
}

// complete variable-point addition: 6 rows
PointLC edwards_add(ConstraintSystem& cs, const PointLC& p, const PointLC& q) {
    u32 t1 = cs.mul(p.x, q.x);
    u32 t2 = cs.mul(p.y, q.y);
    u32 ee = cs.mul(p.x + p.y, q.x + q.y);
    u32 t3 = cs.mul(LinComb::var(t1), LinComb::var(t2));
    u32 x3 = alloc_ratio(cs, LinComb::var(ee) - LinComb::var(t1) - LinComb::var(t2),
                         LinComb::one() + LinComb::var(t3, jub_d()));
    u32 y3 = alloc_ratio(cs, LinComb::var(t2) - LinComb::var(t1, jub_a()),
                         LinComb::one() - LinComb::var(t3, jub_d()));
    return {LinComb::var(x3), LinComb::var(y3)};
}

// sum of bits[i] * 2^i * base over boolean wires, double-and-add with
// precomputed doublings of the base
PointLC edwards_fixed_mul(ConstraintSystem& cs, const JubAffine& base, std::span<const u32> bits) {
    PointLC acc;
    JubExt power = JubExt::from_affine(base);
    for (u32 b : bits) {
        acc = edwards_cond_add_const(cs, acc, power.to_affine(), LinComb::var(b));
        power = power.dbl();
    }
    return acc;
}

LinComb merkle_path_gadget(ConstraintSystem& cs, const LinComb& leaf,
                           std::span<const u32> index_bits, std::span<const Fr> siblings) {
    LinComb cur = leaf;
    for (size_t lvl = 0; lvl < siblings.size(); lvl++) {
        LinComb sib = LinComb::var(cs.alloc(siblings[lvl]));
        LinComb b = LinComb::var(index_bits[lvl]);
        // index bit 1 puts the running node on the right
        LinComb left = cur + LinComb::var(cs.mul(b, sib - cur));
        LinComb right = cur + sib - left;
        cur = poseidon2_gadget(cs, left, right);
    }
    return cur;
}

LinComb limb_bits_lc(const BitVec& bits, size_t from) {
    return limb_lc(std::span<const BitLC>(bits).subspan(from, 128));
}

}  // namespace

BitVec pedersen_serialized_gadget(ConstraintSystem& cs, const LinComb& value, u32 value_bits,
                                  const Fl& randomness, const CommitmentParams& params) {
    if (value_bits == 0 || value_bits > 128)
        throw std::invalid_argument("pedersen gadget: value_bits out of range");
    std::vector<u32> vbits = cs.decompose(value, value_bits);
    Limbs rl = randomness.to_limbs();
    std::vector<u32> rbits;
    rbits.reserve(251);  // the subgroup order is a 251-bit prime
    for (u32 i = 0; i < 251; i++) rbits.push_back(cs.alloc_bool((rl[i / 64] >> (i % 64)) & 1));

    PointLC c = edwards_add(cs, edwards_fixed_mul(cs, params.g, vbits),
                            edwards_fixed_mul(cs, params.h, rbits));

    // Serialization: y as 254 little-endian bits, a zero bit, then the parity
    // of x.  The recomposition row pins the y bits only modulo the field and
    // the parity bit is a free witness; both are forced to the canonical
    // encoding downstream, where these bits feed a hash whose public value
    // was computed natively from exactly that encoding.
    std::vector<u32> ybits = cs.decompose(c.y, 254);
    u32 parity = cs.alloc_bool(cs.eval(c.x).to_limbs()[0] & 1);
    BitVec out;
    out.reserve(256);
    for (u32 w : ybits) out.push_back(BitLC::wire(w));
    out.push_back(BitLC::constant(false));
    out.push_back(BitLC::wire(parity));
    return out;
}

// -------------------------------------------------------------- synthesis ---

ConstraintReport synthesize_attest(ConstraintSystem& cs, const CircuitConfig& cfg,
                                   const PublicInputs& pub, const PrivateWitness& wit) {
    cfg.validate();
    const u32 m = cfg.m;
    const u32 depth = cfg.depth();
    if (pub.mu.size() != m || pub.sigma.size() != m)
        throw std::invalid_argument("synthesize: population vectors must have m entries");
    if (wit.features.size() != m)
        throw std::invalid_argument("synthesize: need m feature scalars");
    if (wit.samples.size() != cfg.k)
        throw std::invalid_argument("synthesize: need k sample witnesses");
    for (const SampleWitness& sw : wit.samples)
        if (sw.prev_path.size() != depth || sw.cur_path.size() != depth)
            throw std::invalid_argument("synthesize: path depth does not match chain length");
    if (cs.num_vars != 1 || !cs.constraints.empty())
        throw std::invalid_argument("synthesize: constraint system must be fresh");

    // public wires, in the normative order
    u32 w_hp_lo = cs.alloc_public(pub.h_prev_lo);
    u32 w_hp_hi = cs.alloc_public(pub.h_prev_hi);
    u32 w_h_lo = cs.alloc_public(pub.h_lo);
    u32 w_h_hi = cs.alloc_public(pub.h_hi);
    u32 w_root = cs.alloc_public(pub.swf_root);
    (void)cs.alloc_public(pub.duration_s);  // d_i rides along unconstrained
    std::vector<u32> w_mu(m), w_sigma(m);
    for (u32 j = 0; j < m; j++) w_mu[j] = cs.alloc_public(pub.mu[j]);
    for (u32 j = 0; j < m; j++) w_sigma[j] = cs.alloc_public(pub.sigma[j]);

    ConstraintReport rep;
    size_t mark = cs.constraints.size();

    // ---- C1: sampled work-chain links --------------------------------------
    // Each sampled position is recomputed from the public root, so the prover
    // cannot steer which links get audited.  The canonical decomposition is
    // load-bearing: with the wrapped representative the low bits — the slot —
    // would shift, handing the prover a second admissible position.
    for (u32 l = 1; l <= cfg.k; l++) {
        const SampleWitness& sw = wit.samples[l - 1];
        LinComb h =
            poseidon2_gadget(cs, LinComb::var(w_root), LinComb::constant(Fr::from_u64(l)));
        std::vector<u32> hbits = decompose_canonical(cs, h);
        std::span<const u32> slot_bits(hbits.data(), depth);

        // slot 0 means the link starts at the seed state, which has no leaf
        LinComb is_first = LinComb::one() - LinComb::var(slot_bits[0]);
        for (u32 i = 1; i < depth; i++)
            is_first = LinComb::var(cs.mul(is_first, LinComb::one() - LinComb::var(slot_bits[i])));

        // previous slot = slot - 1, wrapping to N - 1 exactly when slot == 0;
        // both sides of the equality are integers below N, so the bits are
        // pinned, not merely congruent
        u64 slot_val = cs.eval(h).to_limbs()[0] & (cfg.chain_length - 1);
        u64 prev_val = slot_val == 0 ? cfg.chain_length - 1 : slot_val - 1;
        std::vector<u32> prev_bits(depth);
        LinComb prev_lc, slot_lc;
        Fr pow = Fr::one();
        for (u32 i = 0; i < depth; i++) {
            prev_bits[i] = cs.alloc_bool((prev_val >> i) & 1);
            prev_lc += LinComb::var(prev_bits[i], pow);
            slot_lc += LinComb::var(slot_bits[i], pow);
            pow = pow + pow;
        }
        cs.enforce_equal(
            prev_lc, slot_lc - LinComb::one() + is_first.scaled(Fr::from_u64(cfg.chain_length)));

        // the link itself: SHA256(s_{j-1}) = s_j
        BitVec prev_state = alloc_bits_of(cs, sw.prev_state);
        BitVec cur_state = digest_bits(sha256_message_gadget(cs, prev_state));

        // both states open against the public root (the previous one only
        // when it has a leaf, i.e. not at the seed)
        LinComb leaf_prev =
            poseidon2_gadget(cs, limb_bits_lc(prev_state, 0), limb_bits_lc(prev_state, 128));
        LinComb leaf_cur =
            poseidon2_gadget(cs, limb_bits_lc(cur_state, 0), limb_bits_lc(cur_state, 128));
        LinComb root_prev = merkle_path_gadget(cs, leaf_prev, prev_bits, sw.prev_path);
        LinComb root_cur = merkle_path_gadget(cs, leaf_cur, slot_bits, sw.cur_path);
        cs.enforce_equal(root_cur, LinComb::var(w_root));
        cs.enforce(LinComb::one() - is_first, root_prev - LinComb::var(w_root), LinComb::zero());
    }
    rep.c1 = cs.constraints.size() - mark;
    mark = cs.constraints.size();

    // ---- C2: behavioral windows --------------------------------------------
    // f in [mu - mult*sigma, mu + mult*sigma], shifted so both sides are
    // nonnegative: each comparison becomes one range decomposition wide
    // enough for the largest honest value.  Values clipped by the 16-bit
    // feature domain come out right automatically: the feature itself is
    // range-checked to 16 bits, and a window edge beyond the domain just
    // leaves its comparison slack.
    const u32 cmp_bits = cfg.n_bits + static_cast<u32>(std::bit_width(cfg.bounds_mult));
    const Fr mult = Fr::from_u64(cfg.bounds_mult);
    LinComb feat_sum;
    for (u32 j = 0; j < m; j++) {
        u32 f = cs.alloc(Fr::from_u64(wit.features[j]));
        cs.decompose(LinComb::var(f), cfg.n_bits);
        cs.decompose(LinComb::var(f) + LinComb::var(w_sigma[j], mult) - LinComb::var(w_mu[j]),
                     cmp_bits);
        cs.decompose(LinComb::var(w_mu[j]) + LinComb::var(w_sigma[j], mult) - LinComb::var(f),
                     cmp_bits);
        feat_sum += LinComb::var(f);
    }
    rep.c2 = cs.constraints.size() - mark;
    mark = cs.constraints.size();

    // ---- C3: temporal spacing ----------------------------------------------
    // tau_i - tau_{i-1} >= d_min over the private millisecond timestamps.
    // Each quantity is range-checked to 48 bits so the field subtraction is
    // an honest integer comparison.
    u32 w_tau = cs.alloc(Fr::from_u64(wit.tau_ms));
    u32 w_tau_prev = cs.alloc(Fr::from_u64(wit.tau_prev_ms));
    cs.decompose(LinComb::var(w_tau), 48);
    cs.decompose(LinComb::var(w_tau_prev), 48);
    cs.decompose(LinComb::var(w_tau) - LinComb::var(w_tau_prev) -
                     LinComb::constant(Fr::from_u64(cfg.d_min_ms)),
                 48);
    rep.c3 = cs.constraints.size() - mark;
    mark = cs.constraints.size();

    // ---- C4: content binding -----------------------------------------------
    // h_i = SHA256(h_{i-1} || delta_i || serialize(C_i)) with C_i recomputed
    // from the aggregate opening: sum of per-feature commitments equals a
    // commitment to the feature sum under the summed randomness.
    std::vector<u32> hp_lo = cs.decompose(LinComb::var(w_hp_lo), 128);
    std::vector<u32> hp_hi = cs.decompose(LinComb::var(w_hp_hi), 128);
    BitVec delta = alloc_bits_of(cs, wit.content_delta);
    const u32 sum_bits = cfg.n_bits + static_cast<u32>(std::bit_width(m - 1));
    BitVec ser = pedersen_serialized_gadget(cs, feat_sum, sum_bits, wit.r_agg);

    BitVec message;
    message.reserve(768);
    for (u32 w : hp_lo) message.push_back(BitLC::wire(w));
    for (u32 w : hp_hi) message.push_back(BitLC::wire(w));
    message.insert(message.end(), delta.begin(), delta.end());
    message.insert(message.end(), ser.begin(), ser.end());
    BitVec hout = digest_bits(sha256_message_gadget(cs, message));
    cs.enforce_equal(limb_bits_lc(hout, 0), LinComb::var(w_h_lo));
    cs.enforce_equal(limb_bits_lc(hout, 128), LinComb::var(w_h_hi));
    rep.c4 = cs.constraints.size() - mark;

    rep.total = cs.constraints.size();
    rep.num_vars = cs.num_vars;
    rep.num_public = cs.num_public;
    return rep;
}

ConstraintReport synthesize_shape(ConstraintSystem& cs, const CircuitConfig& cfg) {
    cfg.validate();
    PublicInputs pub;
    pub.mu.assign(cfg.m, Fr::zero());
    pub.sigma.assign(cfg.m, Fr::zero());
    PrivateWitness wit;
    wit.features.assign(cfg.m, 0);
    wit.samples.assign(cfg.k, SampleWitness{Digest{}, std::vector<Fr>(cfg.depth(), Fr::zero()),
                                            std::vector<Fr>(cfg.depth(), Fr::zero())});
    return synthesize_attest(cs, cfg, pub, wit);
}

ConstraintReport constraint_count(const CircuitConfig& cfg) {
    ConstraintSystem cs;
    return synthesize_shape(cs, cfg);
}

}  // namespace zkpop
