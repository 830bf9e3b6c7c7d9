#include <zkpop/fft.hpp>
#include <zkpop/groth16.hpp>
#include <zkpop/msm.hpp>
#include <zkpop/pairing.hpp>

#include <sodium.h>

#include <bit>
#include <cstring>
#include <stdexcept>
#include <string>

namespace zkpop {

namespace {

// PRF to Fr: SHA256(seed || label || counter), rejection-sampled until the
// 256-bit draw is a canonical nonzero element, so outputs are uniform.
Fr derive_fr(std::span<const u8> seed, std::string_view label) {
    for (u64 ctr = 0;; ctr++) {
        Sha256 h;
        h.update(seed).update(label).update_u64(ctr);
        Digest d = h.final();
        auto fe = Fr::from_bytes(d.data());
        if (fe && !fe->is_zero()) return *fe;
    }
}

G1Affine g1_neg(const G1Affine& p) {
    if (p.inf) return p;
    return {p.x, -p.y, false};
}

Digest circuit_digest_from(const ConstraintSystem& cs, const CircuitConfig& cfg) {
    Sha256 h;
    h.update("zkpop-attest-circuit-v1");
    h.update_u32(cfg.m).update_u32(cfg.k).update_u32(cfg.n_bits).update_u32(cfg.bounds_mult);
    h.update_u32(cfg.chain_length);
    h.update_u64(std::bit_cast<u64>(cfg.feature_min_ms));
    h.update_u64(std::bit_cast<u64>(cfg.feature_max_ms));
    h.update_u64(cfg.d_min_ms);
    Digest sd = cs.structure_digest();
    h.update(sd);
    return h.final();
}

}  // namespace

Digest attestation_circuit_digest(const CircuitConfig& cfg) {
    ConstraintSystem cs;
    synthesize_shape(cs, cfg);
    return circuit_digest_from(cs, cfg);
}

SetupArtifacts groth16_setup(const ConstraintSystem& cs, const Digest& circuit_digest,
                             std::span<const u8> seed, bool production_mode) {
    if (production_mode)
        throw std::invalid_argument(
            "seeded parameter generation is test-only: anyone who knows the seed can forge "
            "proofs; production parameters must come from a multi-party ceremony");

    const u64 rows = cs.constraints.size();
    const u64 npub = cs.num_public;
    const u64 nvars = cs.num_vars;

    Fr alpha = derive_fr(seed, "alpha");
    Fr beta = derive_fr(seed, "beta");
    Fr gamma = derive_fr(seed, "gamma");
    Fr delta = derive_fr(seed, "delta");

    // one virtual row per public wire (constant wire included) keeps the
    // public A-polynomials linearly independent of the rest of the column
    EvalDomain dom = EvalDomain::radix2(rows + npub + 1);

    Fr tau = derive_fr(seed, "tau");
    for (u64 retry = 0; dom.vanishing_at(tau).is_zero(); retry++)
        tau = derive_fr(seed, "tau-retry-" + std::to_string(retry));

    std::vector<Fr> L = dom.lagrange_at(tau);

    // per-wire column evaluations at tau
    std::vector<Fr> at(nvars), bt(nvars), ct(nvars);
    for (u64 r = 0; r < rows; r++) {
        const Constraint& row = cs.constraints[r];
        for (const auto& [w, coeff] : row.a.terms) at[w] += coeff * L[r];
        for (const auto& [w, coeff] : row.b.terms) bt[w] += coeff * L[r];
        for (const auto& [w, coeff] : row.c.terms) ct[w] += coeff * L[r];
    }
    for (u64 i = 0; i <= npub; i++) at[i] += L[rows + i];

    FixedBaseG1 t1(g1_generator());
    FixedBaseG2 t2(g2_generator());
    Fr gamma_inv = gamma.inv();
    Fr delta_inv = delta.inv();

    std::vector<G1> a_q(nvars), b1_q(nvars), ic_j(npub + 1), l_q(nvars - npub - 1);
    std::vector<G2> b2_q(nvars);
    for (u64 i = 0; i < nvars; i++) {
        a_q[i] = t1.mul(at[i]);
        b1_q[i] = t1.mul(bt[i]);
        b2_q[i] = t2.mul(bt[i]);
        Fr k = beta * at[i] + alpha * bt[i] + ct[i];
        if (i <= npub)
            ic_j[i] = t1.mul(k * gamma_inv);
        else
            l_q[i - npub - 1] = t1.mul(k * delta_inv);
    }

    // powers tau^j * Z(tau) / delta for the quotient commitment, j < n - 1
    std::vector<G1> h_q(dom.size - 1);
    Fr cur = dom.vanishing_at(tau) * delta_inv;
    for (u64 j = 0; j + 1 < dom.size; j++) {
        h_q[j] = t1.mul(cur);
        cur *= tau;
    }

    SetupArtifacts art;
    art.circuit_digest = circuit_digest;

    ProvingKey& pk = art.pk;
    pk.num_public = (u32)npub;
    pk.alpha1 = t1.mul(alpha).to_affine();
    pk.beta1 = t1.mul(beta).to_affine();
    pk.delta1 = t1.mul(delta).to_affine();
    pk.beta2 = t2.mul(beta).to_affine();
    pk.delta2 = t2.mul(delta).to_affine();
    pk.a_query = batch_to_affine(a_q);
    pk.b1_query = batch_to_affine(b1_q);
    pk.b2_query = batch_to_affine(b2_q);
    pk.l_query = batch_to_affine(l_q);
    pk.h_query = batch_to_affine(h_q);

    VerifyingKey& vk = art.vk;
    vk.alpha1 = pk.alpha1;
    vk.beta2 = pk.beta2;
    vk.gamma2 = t2.mul(gamma).to_affine();
    vk.delta2 = pk.delta2;
    vk.ic = batch_to_affine(ic_j);
    return art;
}

SetupArtifacts setup_attestation(const CircuitConfig& cfg, std::span<const u8> seed,
                                 bool production_mode) {
    ConstraintSystem cs;
    synthesize_shape(cs, cfg);
    return groth16_setup(cs, circuit_digest_from(cs, cfg), seed, production_mode);
}

Proof prove(const ProvingKey& pk, const ConstraintSystem& cs, std::span<const u8> rng_seed) {
    const u64 rows = cs.constraints.size();
    const u64 npub = cs.num_public;
    if (pk.num_public != cs.num_public || pk.a_query.size() != cs.num_vars ||
        pk.b1_query.size() != cs.num_vars || pk.b2_query.size() != cs.num_vars ||
        pk.l_query.size() + npub + 1 != cs.num_vars)
        throw std::invalid_argument("proving key does not match the constraint system shape");

    EvalDomain dom = EvalDomain::radix2(rows + npub + 1);
    if (pk.h_query.size() + 1 != dom.size)
        throw std::invalid_argument("proving key does not match the constraint system shape");

    // a broken witness must never leave this function as a proof
    if (!cs.is_satisfied())
        throw std::invalid_argument("assignment does not satisfy the constraint system");

    // row evaluations of the three columns, with the virtual input rows,
    // then the quotient h = (A*B - C) / Z computed pointwise on a coset
    // (Z is the nonzero constant shift^n - 1 there)
    std::vector<Fr> a_e(dom.size), b_e(dom.size), c_e(dom.size);
    for (u64 r = 0; r < rows; r++) {
        a_e[r] = cs.eval(cs.constraints[r].a);
        b_e[r] = cs.eval(cs.constraints[r].b);
        c_e[r] = cs.eval(cs.constraints[r].c);
    }
    for (u64 i = 0; i <= npub; i++) a_e[rows + i] = cs.assignment[i];

    dom.ifft(a_e);
    dom.ifft(b_e);
    dom.ifft(c_e);
    dom.coset_fft(a_e);
    dom.coset_fft(b_e);
    dom.coset_fft(c_e);
    Fr zinv = dom.vanishing_at(dom.shift).inv();
    std::vector<Fr> h(dom.size);
    for (u64 i = 0; i < dom.size; i++) h[i] = (a_e[i] * b_e[i] - c_e[i]) * zinv;
    dom.coset_ifft(h);
    h.resize(dom.size - 1);  // degree <= n - 2

    Fr r, s;
    if (rng_seed.empty()) {
        if (sodium_init() < 0) throw std::runtime_error("libsodium initialization failed");
        u8 buf[64];
        randombytes_buf(buf, sizeof buf);
        r = Fr::from_bytes_wide(buf);
        randombytes_buf(buf, sizeof buf);
        s = Fr::from_bytes_wide(buf);
        sodium_memzero(buf, sizeof buf);
    } else {
        r = derive_fr(rng_seed, "prove-r");
        s = derive_fr(rng_seed, "prove-s");
    }

    const std::vector<Fr>& w = cs.assignment;
    G1 delta1 = G1::from_affine(pk.delta1);

    G1 A = G1::from_affine(pk.alpha1).add(msm_g1(pk.a_query, w)).add(delta1.mul(r));
    G2 B2 = G2::from_affine(pk.beta2).add(msm_g2(pk.b2_query, w)).add(
        G2::from_affine(pk.delta2).mul(s));
    G1 B1 = G1::from_affine(pk.beta1).add(msm_g1(pk.b1_query, w)).add(delta1.mul(s));

    std::vector<Fr> priv(w.begin() + npub + 1, w.end());
    G1 C = msm_g1(pk.l_query, priv).add(msm_g1(pk.h_query, h));
    C = C.add(A.mul(s)).add(B1.mul(r)).add(delta1.mul(r * s).neg());

    return {A.to_affine(), B2.to_affine(), C.to_affine()};
}

bool verify(const VerifyingKey& vk, std::span<const Fr> public_inputs, const Proof& proof) {
    if (public_inputs.size() + 1 != vk.ic.size()) return false;
    if (!g1_valid(proof.a) || !g2_valid(proof.b) || !g1_valid(proof.c)) return false;

    std::vector<G1Affine> bases(vk.ic.begin() + 1, vk.ic.end());
    std::vector<Fr> scalars(public_inputs.begin(), public_inputs.end());
    G1Affine ic = G1::from_affine(vk.ic[0]).add(msm_g1(bases, scalars)).to_affine();

    return pairing_product_is_one({
        {proof.a, proof.b},
        {g1_neg(ic), vk.gamma2},
        {g1_neg(proof.c), vk.delta2},
        {g1_neg(vk.alpha1), vk.beta2},
    });
}

bool batch_verify(const VerifyingKey& vk,
                  std::span<const std::pair<std::vector<Fr>, Proof>> items,
                  std::span<const u8> rng_seed) {
    if (items.empty()) throw std::invalid_argument("empty proof batch");
    const size_t npub = vk.ic.size() - 1;
    for (const auto& [pubs, pr] : items) {
        if (pubs.size() != npub) return false;
        if (!g1_valid(pr.a) || !g2_valid(pr.b) || !g1_valid(pr.c)) return false;
    }

    // Coefficients come from a transcript hash over every byte they will
    // weigh, so no proof can be crafted against its own weight; 128 bits
    // each makes the false-accept chance of a bad batch ~2^-128.
    Sha256 root_h;
    root_h.update(rng_seed).update("batch");
    for (const auto& [pubs, pr] : items) {
        for (const Fr& x : pubs) {
            auto b = x.to_bytes();
            root_h.update(b);
        }
        auto pb = proof_serialize(pr);
        root_h.update(pb);
    }
    Digest root = root_h.final();

    std::vector<Fr> rho(items.size());
    Fr rho_sum;
    for (size_t i = 0; i < items.size(); i++) {
        Sha256 h;
        h.update(root).update_u64(i);
        Digest d = h.final();
        u64 lo = 0, hi = 0;
        for (int j = 0; j < 8; j++) lo |= (u64)d[j] << (8 * j);
        for (int j = 0; j < 8; j++) hi |= (u64)d[8 + j] << (8 * j);
        Fr c = Fr::from_limbs({lo, hi, 0, 0});
        if (c.is_zero()) c = Fr::one();
        rho[i] = c;
        rho_sum += c;
    }

    // random linear combination of the per-proof checks:
    //   prod_i e(rho_i A_i, B_i) * e(-sum rho_i IC_i, gamma2)
    //        * e(-sum rho_i C_i, delta2) * e(-(sum rho_i) alpha1, beta2) == 1
    std::vector<std::pair<G1Affine, G2Affine>> pairs;
    pairs.reserve(items.size() + 3);
    std::vector<Fr> ic_scalars(vk.ic.size());
    ic_scalars[0] = rho_sum;
    G1 c_acc = G1::identity();
    for (size_t i = 0; i < items.size(); i++) {
        const auto& [pubs, pr] = items[i];
        pairs.push_back({G1::from_affine(pr.a).mul(rho[i]).to_affine(), pr.b});
        c_acc = c_acc.add(G1::from_affine(pr.c).mul(rho[i]));
        for (size_t j = 0; j < npub; j++) ic_scalars[1 + j] += rho[i] * pubs[j];
    }
    pairs.push_back({msm_g1(vk.ic, ic_scalars).neg().to_affine(), vk.gamma2});
    pairs.push_back({c_acc.neg().to_affine(), vk.delta2});
    pairs.push_back({G1::from_affine(vk.alpha1).mul(rho_sum).neg().to_affine(), vk.beta2});
    return pairing_product_is_one(pairs);
}

// --- serialization -------------------------------------------------------
// Proofs and verifying keys travel between parties, so they use the
// compressed point encodings and get full validity checks on the way in.
// Proving keys are local material written and read by the same installation;
// they use raw affine coordinates (about twice the size, but loading skips
// half a million square roots) and are checked on-curve only.

std::array<u8, PROOF_BYTES> proof_serialize(const Proof& p) {
    std::array<u8, PROOF_BYTES> out{};
    g1_serialize(p.a, out.data());
    g2_serialize(p.b, out.data() + 32);
    g1_serialize(p.c, out.data() + 96);
    return out;
}

std::optional<Proof> proof_deserialize(std::span<const u8> bytes) {
    if (bytes.size() != PROOF_BYTES) return std::nullopt;
    auto a = g1_deserialize(bytes.data());
    auto b = g2_deserialize(bytes.data() + 32);
    auto c = g1_deserialize(bytes.data() + 96);
    if (!a || !b || !c) return std::nullopt;
    // decompression puts points on the curve; the subgroup check for G2 is
    // separate and mandatory for untrusted proof bytes
    if (!g1_valid(*a) || !g2_valid(*b) || !g1_valid(*c)) return std::nullopt;
    return Proof{*a, *b, *c};
}

namespace {

constexpr u8 KIND_SETUP = 1;
constexpr u8 KIND_VERIFIER = 2;
constexpr u32 FORMAT_VERSION = 1;

void put_u32(std::vector<u8>& v, u32 x) {
    for (int i = 0; i < 4; i++) v.push_back((u8)(x >> (8 * i)));
}

void put_u64(std::vector<u8>& v, u64 x) {
    for (int i = 0; i < 8; i++) v.push_back((u8)(x >> (8 * i)));
}

void put_g1(std::vector<u8>& v, const G1Affine& p) {
    u8 buf[32];
    g1_serialize(p, buf);
    v.insert(v.end(), buf, buf + 32);
}

void put_g2(std::vector<u8>& v, const G2Affine& p) {
    u8 buf[64];
    g2_serialize(p, buf);
    v.insert(v.end(), buf, buf + 64);
}

// raw affine: x then y, canonical little-endian; all zeros marks infinity
// (unambiguous: (0,0) is not on either curve)
void put_g1_raw(std::vector<u8>& v, const G1Affine& p) {
    u8 buf[32]{};
    if (p.inf) {
        v.insert(v.end(), 64, 0);
        return;
    }
    p.x.to_bytes(buf);
    v.insert(v.end(), buf, buf + 32);
    p.y.to_bytes(buf);
    v.insert(v.end(), buf, buf + 32);
}

void put_g2_raw(std::vector<u8>& v, const G2Affine& p) {
    u8 buf[32]{};
    if (p.inf) {
        v.insert(v.end(), 128, 0);
        return;
    }
    for (const Fp* c : {&p.x.c0, &p.x.c1, &p.y.c0, &p.y.c1}) {
        c->to_bytes(buf);
        v.insert(v.end(), buf, buf + 32);
    }
}

struct Cursor {
    std::span<const u8> data;
    size_t pos = 0;

    const u8* take(size_t n) {
        if (n > data.size() - pos) return nullptr;
        const u8* p = data.data() + pos;
        pos += n;
        return p;
    }
    bool get_u32(u32& out) {
        const u8* p = take(4);
        if (!p) return false;
        out = 0;
        for (int i = 0; i < 4; i++) out |= (u32)p[i] << (8 * i);
        return true;
    }
    bool get_u64(u64& out) {
        const u8* p = take(8);
        if (!p) return false;
        out = 0;
        for (int i = 0; i < 8; i++) out |= (u64)p[i] << (8 * i);
        return true;
    }
};

bool get_g1(Cursor& c, G1Affine& out) {
    const u8* p = c.take(32);
    if (!p) return false;
    auto pt = g1_deserialize(p);
    if (!pt || !g1_valid(*pt)) return false;
    out = *pt;
    return true;
}

bool get_g2(Cursor& c, G2Affine& out) {
    const u8* p = c.take(64);
    if (!p) return false;
    auto pt = g2_deserialize(p);
    if (!pt || !g2_valid(*pt)) return false;
    out = *pt;
    return true;
}

bool get_g1_raw(Cursor& c, G1Affine& out) {
    const u8* p = c.take(64);
    if (!p) return false;
    bool zero = true;
    for (int i = 0; i < 64 && zero; i++) zero = p[i] == 0;
    if (zero) {
        out = {};
        return true;
    }
    auto x = Fp::from_bytes(p);
    auto y = Fp::from_bytes(p + 32);
    if (!x || !y) return false;
    out = {*x, *y, false};
    return g1_on_curve(out);
}

bool get_g2_raw(Cursor& c, G2Affine& out) {
    const u8* p = c.take(128);
    if (!p) return false;
    bool zero = true;
    for (int i = 0; i < 128 && zero; i++) zero = p[i] == 0;
    if (zero) {
        out = {};
        return true;
    }
    auto xc0 = Fp::from_bytes(p);
    auto xc1 = Fp::from_bytes(p + 32);
    auto yc0 = Fp::from_bytes(p + 64);
    auto yc1 = Fp::from_bytes(p + 96);
    if (!xc0 || !xc1 || !yc0 || !yc1) return false;
    out = {{*xc0, *xc1}, {*yc0, *yc1}, false};
    return g2_on_curve(out);
}

void put_header(std::vector<u8>& v, u8 kind, const std::string& curve, const Digest& digest) {
    v.insert(v.end(), {'Z', 'K', 'P', 'P'});
    put_u32(v, FORMAT_VERSION);
    v.push_back(kind);
    put_u32(v, (u32)curve.size());
    v.insert(v.end(), curve.begin(), curve.end());
    v.insert(v.end(), digest.begin(), digest.end());
}

bool get_header(Cursor& c, u8 expect_kind, std::string& curve, Digest& digest) {
    const u8* magic = c.take(4);
    if (!magic || std::memcmp(magic, "ZKPP", 4) != 0) return false;
    u32 version = 0;
    if (!c.get_u32(version) || version != FORMAT_VERSION) return false;
    const u8* kind = c.take(1);
    if (!kind || *kind != expect_kind) return false;
    u32 clen = 0;
    if (!c.get_u32(clen) || clen > 64) return false;
    const u8* cp = c.take(clen);
    if (!cp) return false;
    curve.assign((const char*)cp, clen);
    const u8* dp = c.take(32);
    if (!dp) return false;
    std::memcpy(digest.data(), dp, 32);
    return true;
}

void put_vk(std::vector<u8>& v, const VerifyingKey& vk) {
    put_g1(v, vk.alpha1);
    put_g2(v, vk.beta2);
    put_g2(v, vk.gamma2);
    put_g2(v, vk.delta2);
    put_u32(v, (u32)vk.ic.size());
    for (const G1Affine& p : vk.ic) put_g1(v, p);
}

bool get_vk(Cursor& c, VerifyingKey& vk) {
    if (!get_g1(c, vk.alpha1) || !get_g2(c, vk.beta2) || !get_g2(c, vk.gamma2) ||
        !get_g2(c, vk.delta2))
        return false;
    u32 n = 0;
    if (!c.get_u32(n) || n == 0 || n > (1u << 20)) return false;
    vk.ic.resize(n);
    for (u32 i = 0; i < n; i++)
        if (!get_g1(c, vk.ic[i])) return false;
    return true;
}

}  // namespace

std::vector<u8> vk_serialize(const SetupArtifacts& art) {
    std::vector<u8> v;
    put_header(v, KIND_VERIFIER, art.curve, art.circuit_digest);
    put_vk(v, art.vk);
    return v;
}

std::optional<VerifierArtifacts> vk_deserialize(std::span<const u8> bytes) {
    Cursor c{bytes};
    VerifierArtifacts art;
    if (!get_header(c, KIND_VERIFIER, art.curve, art.circuit_digest)) return std::nullopt;
    if (art.curve != "BN254") return std::nullopt;
    if (!get_vk(c, art.vk)) return std::nullopt;
    if (c.pos != bytes.size()) return std::nullopt;
    return art;
}

std::vector<u8> setup_serialize(const SetupArtifacts& art) {
    const ProvingKey& pk = art.pk;
    std::vector<u8> v;
    size_t g1s = 3 + pk.a_query.size() + pk.b1_query.size() + pk.l_query.size() +
                 pk.h_query.size();
    v.reserve(128 + art.vk.ic.size() * 32 + g1s * 64 + (2 + pk.b2_query.size()) * 128);

    put_header(v, KIND_SETUP, art.curve, art.circuit_digest);
    put_vk(v, art.vk);

    put_u32(v, pk.num_public);
    put_u64(v, pk.a_query.size());
    put_u64(v, pk.h_query.size());
    put_g1_raw(v, pk.alpha1);
    put_g1_raw(v, pk.beta1);
    put_g1_raw(v, pk.delta1);
    put_g2_raw(v, pk.beta2);
    put_g2_raw(v, pk.delta2);
    for (const G1Affine& p : pk.a_query) put_g1_raw(v, p);
    for (const G1Affine& p : pk.b1_query) put_g1_raw(v, p);
    for (const G2Affine& p : pk.b2_query) put_g2_raw(v, p);
    for (const G1Affine& p : pk.l_query) put_g1_raw(v, p);
    for (const G1Affine& p : pk.h_query) put_g1_raw(v, p);
    return v;
}

std::optional<SetupArtifacts> setup_deserialize(std::span<const u8> bytes) {
    Cursor c{bytes};
    SetupArtifacts art;
    if (!get_header(c, KIND_SETUP, art.curve, art.circuit_digest)) return std::nullopt;
    if (art.curve != "BN254") return std::nullopt;
    if (!get_vk(c, art.vk)) return std::nullopt;

    ProvingKey& pk = art.pk;
    u64 nvars = 0, hlen = 0;
    if (!c.get_u32(pk.num_public) || !c.get_u64(nvars) || !c.get_u64(hlen)) return std::nullopt;
    if (nvars == 0 || nvars > (1u << 26) || hlen > (1u << 28)) return std::nullopt;
    if (pk.num_public + 1 > nvars) return std::nullopt;
    if (!get_g1_raw(c, pk.alpha1) || !get_g1_raw(c, pk.beta1) || !get_g1_raw(c, pk.delta1) ||
        !get_g2_raw(c, pk.beta2) || !get_g2_raw(c, pk.delta2))
        return std::nullopt;
    pk.a_query.resize(nvars);
    pk.b1_query.resize(nvars);
    pk.b2_query.resize(nvars);
    pk.l_query.resize(nvars - pk.num_public - 1);
    pk.h_query.resize(hlen);
    for (G1Affine& p : pk.a_query)
        if (!get_g1_raw(c, p)) return std::nullopt;
    for (G1Affine& p : pk.b1_query)
        if (!get_g1_raw(c, p)) return std::nullopt;
    for (G2Affine& p : pk.b2_query)
        if (!get_g2_raw(c, p)) return std::nullopt;
    for (G1Affine& p : pk.l_query)
        if (!get_g1_raw(c, p)) return std::nullopt;
    for (G1Affine& p : pk.h_query)
        if (!get_g1_raw(c, p)) return std::nullopt;
    if (c.pos != bytes.size()) return std::nullopt;
    return art;
}

}  // namespace zkpop
