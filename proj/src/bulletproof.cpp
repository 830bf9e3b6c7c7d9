#include <zkpop/bulletproof.hpp>
#include <zkpop/sha256.hpp>

#include <sodium.h>

#include <bit>
#include <cstring>
#include <stdexcept>

namespace zkpop {

namespace {

// Proof payload layout: A, S, T1, T2 (32 B each), tau_x, mu, t_hat (32 B),
// then one (L, R) point pair per folding round, then the two final scalars.
constexpr size_t proof_size(u32 rounds) { return (9 + 2 * (size_t)rounds) * 32; }

// nothing-up-my-sleeve generator vectors, disjoint from the Pedersen pair
struct Gens {
    std::vector<JubExt> G, H;
    JubExt u;
};

const Gens& gens() {
    static const Gens g = [] {
        Gens r;
        r.G.reserve(RANGE_MAX_WIDTH);
        r.H.reserve(RANGE_MAX_WIDTH);
        for (u32 i = 0; i < RANGE_MAX_WIDTH; i++) {
            r.G.push_back(JubExt::from_affine(jub_hash_to_subgroup("zkpop/v1/range/G", i)));
            r.H.push_back(JubExt::from_affine(jub_hash_to_subgroup("zkpop/v1/range/H", i)));
        }
        r.u = JubExt::from_affine(jub_hash_to_subgroup("zkpop/v1/range/u", 0));
        return r;
    }();
    return g;
}

// Fiat-Shamir transcript: hash-chained absorb, rejection-sampled challenges
struct Transcript {
    Digest state;

    explicit Transcript(std::string_view domain) { state = sha256(domain); }

    void absorb(std::string_view label, std::span<const u8> data) {
        Sha256 h;
        h.update(state).update(label).update_u64(data.size()).update(data);
        state = h.final();
    }
    void absorb_u64(std::string_view label, u64 v) {
        Sha256 h;
        h.update(state).update(label).update_u64(v);
        state = h.final();
    }
    void absorb_point(std::string_view label, const JubExt& p) {
        auto b = jub_serialize(p.to_affine());
        absorb(label, b);
    }
    void absorb_scalar(std::string_view label, const Fl& s) {
        auto b = s.to_bytes();
        absorb(label, b);
    }
    Fl challenge(std::string_view label) {
        for (u64 ctr = 0;; ctr++) {
            Sha256 h;
            h.update(state).update("challenge").update(label).update_u64(ctr);
            Digest d = h.final();
            auto fe = Fl::from_bytes(d.data());
            if (fe && !fe->is_zero()) {
                state = d;
                return *fe;
            }
        }
    }
};

Fl inner(std::span<const Fl> a, std::span<const Fl> b) {
    Fl acc;
    for (size_t i = 0; i < a.size(); i++) acc += a[i] * b[i];
    return acc;
}

JubExt jub_msm(std::span<const JubExt> bases, std::span<const Fl> scalars) {
    JubExt acc;
    for (size_t i = 0; i < bases.size(); i++) {
        if (scalars[i].is_zero()) continue;
        acc = acc.add(bases[i].mul(scalars[i]));
    }
    return acc;
}

// 2^n - 1 as a scalar
Fl pow2_minus_one(u32 n) {
    return n >= 64 ? Fl::from_u64(~0ull) : Fl::from_u64((1ull << n) - 1);
}

struct Shape {
    u32 m, mp, N, rounds;
};

bool compute_shape(u32 m, u32 n_bits, Shape& s) {
    if (m == 0 || n_bits == 0 || n_bits > 64 || !std::has_single_bit(n_bits)) return false;
    s.m = m;
    s.mp = std::bit_ceil(m);
    s.N = s.mp * n_bits;
    if (s.N > RANGE_MAX_WIDTH) return false;
    s.rounds = (u32)std::countr_zero(s.N);
    return true;
}

void init_transcript(Transcript& tr, const Shape& s, u32 n_bits,
                     std::span<const JubAffine> commitments) {
    tr.absorb_u64("n", n_bits);
    tr.absorb_u64("m", s.m);
    for (u32 j = 0; j < s.mp; j++) {
        JubAffine v = j < commitments.size() ? commitments[j] : JubAffine{};
        auto b = jub_serialize(v);
        tr.absorb("V", b);
    }
}

struct Writer {
    std::vector<u8> out;
    void point(const JubExt& p) {
        auto b = jub_serialize(p.to_affine());
        out.insert(out.end(), b.begin(), b.end());
    }
    void scalar(const Fl& s) {
        auto b = s.to_bytes();
        out.insert(out.end(), b.begin(), b.end());
    }
};

struct Reader {
    std::span<const u8> in;
    size_t pos = 0;
    bool point(JubExt& out) {
        if (pos + 32 > in.size()) return false;
        std::array<u8, 32> b;
        std::memcpy(b.data(), in.data() + pos, 32);
        pos += 32;
        auto p = jub_deserialize(b);
        if (!p || !jub_in_subgroup(*p)) return false;
        out = JubExt::from_affine(*p);
        return true;
    }
    bool scalar(Fl& out) {
        if (pos + 32 > in.size()) return false;
        auto f = Fl::from_bytes(in.data() + pos);
        pos += 32;
        if (!f) return false;
        out = *f;
        return true;
    }
};

}  // namespace

RangeProof range_prove(std::span<const FeatureCommitment> openings, u32 n_bits,
                       const CommitmentParams& params, std::span<const u8> rng_seed) {
    Shape s;
    if (!compute_shape((u32)openings.size(), n_bits, s))
        throw std::invalid_argument("unsupported range proof shape");
    const u32 n = n_bits, N = s.N;

    // out-of-range or inconsistent openings must never become proofs
    std::vector<u64> values(s.mp, 0);
    for (u32 j = 0; j < s.m; j++) {
        Limbs v = openings[j].value.to_limbs();
        if (v[1] || v[2] || v[3] || (n < 64 && (v[0] >> n)))
            throw std::invalid_argument("committed value out of range");
        if (!(pedersen_commit(openings[j].value, openings[j].randomness, params) ==
              openings[j].point))
            throw std::invalid_argument("opening does not match its commitment");
        values[j] = v[0];
    }

    const Gens& gen = gens();

    Transcript tr("zkpop/v1/range-proof");
    {
        std::vector<JubAffine> pts(s.m);
        for (u32 j = 0; j < s.m; j++) pts[j] = openings[j].point;
        init_transcript(tr, s, n, pts);
    }

    bool fresh = rng_seed.empty();
    if (fresh && sodium_init() < 0) throw std::runtime_error("libsodium initialization failed");
    u64 draw_ctr = 0;
    auto draw = [&]() -> Fl {
        u8 wide[64];
        if (fresh) {
            randombytes_buf(wide, sizeof wide);
        } else {
            Sha256 h;
            h.update(rng_seed).update("range-blind").update_u64(draw_ctr++);
            Digest d1 = h.final();
            Sha256 h2;
            h2.update(d1).update("ext");
            Digest d2 = h2.final();
            std::memcpy(wide, d1.data(), 32);
            std::memcpy(wide + 32, d2.data(), 32);
        }
        Fl r = Fl::from_bytes_wide(wide);
        sodium_memzero(wide, sizeof wide);
        return r;
    };

    auto bit = [&](u32 i) -> bool { return (values[i / n] >> (i % n)) & 1; };

    // A commits to the bit vectors, S to the blinding vectors
    Fl alpha = draw(), rho = draw();
    JubExt A = params.h_tab->mul(alpha);
    for (u32 i = 0; i < N; i++) A = A.add(bit(i) ? gen.G[i] : gen.H[i].neg());
    std::vector<Fl> sL(N), sR(N);
    for (u32 i = 0; i < N; i++) {
        sL[i] = draw();
        sR[i] = draw();
    }
    JubExt S = params.h_tab->mul(rho);
    for (u32 i = 0; i < N; i++) S = S.add(gen.G[i].mul(sL[i])).add(gen.H[i].mul(sR[i]));

    tr.absorb_point("A", A);
    tr.absorb_point("S", S);
    Fl y = tr.challenge("y");
    Fl z = tr.challenge("z");

    std::vector<Fl> ypow(N);
    ypow[0] = Fl::one();
    for (u32 i = 1; i < N; i++) ypow[i] = ypow[i - 1] * y;
    std::vector<Fl> zpow(s.mp);  // z^{2+j}
    zpow[0] = z * z;
    for (u32 j = 1; j < s.mp; j++) zpow[j] = zpow[j - 1] * z;

    std::vector<Fl> twopow(n);
    twopow[0] = Fl::one();
    for (u32 bb = 1; bb < n; bb++) twopow[bb] = twopow[bb - 1] + twopow[bb - 1];

    // l(X) = aL - z + sL X;  r(X) = y^i (aR + z + sR X) + z^{2+j} 2^{i mod n}
    std::vector<Fl> l0(N), r0(N), r1(N);
    for (u32 i = 0; i < N; i++) {
        bool b = bit(i);
        l0[i] = (b ? Fl::one() : Fl()) - z;
        Fl ar_z = z - (b ? Fl() : Fl::one());
        r0[i] = ypow[i] * ar_z + zpow[i / n] * twopow[i % n];
        r1[i] = ypow[i] * sR[i];
    }

    Fl t1 = inner(l0, r1) + inner(sL, r0);
    Fl t2 = inner(sL, r1);
    Fl tau1 = draw(), tau2 = draw();
    JubExt T1 = params.g_tab->mul(t1).add(params.h_tab->mul(tau1));
    JubExt T2 = params.g_tab->mul(t2).add(params.h_tab->mul(tau2));
    tr.absorb_point("T1", T1);
    tr.absorb_point("T2", T2);
    Fl x = tr.challenge("x");

    std::vector<Fl> lv(N), rv(N);
    for (u32 i = 0; i < N; i++) {
        lv[i] = l0[i] + sL[i] * x;
        rv[i] = r0[i] + r1[i] * x;
    }
    Fl t_hat = inner(lv, rv);
    Fl tau_x = tau2 * x * x + tau1 * x;
    for (u32 j = 0; j < s.m; j++) tau_x += zpow[j] * openings[j].randomness;
    Fl mu = alpha + rho * x;

    tr.absorb_scalar("tau_x", tau_x);
    tr.absorb_scalar("mu", mu);
    tr.absorb_scalar("t_hat", t_hat);
    Fl w = tr.challenge("w");
    JubExt U = gen.u.mul(w);

    Writer wr;
    wr.out.reserve(proof_size(s.rounds));
    wr.point(A);
    wr.point(S);
    wr.point(T1);
    wr.point(T2);
    wr.scalar(tau_x);
    wr.scalar(mu);
    wr.scalar(t_hat);

    // inner-product argument over (G, H') with H'_i = H_i^{y^-i}
    std::vector<JubExt> Gv(gen.G.begin(), gen.G.begin() + N), Hv(N);
    {
        Fl yi = Fl::one(), y_inv = y.inv();
        for (u32 i = 0; i < N; i++) {
            Hv[i] = gen.H[i].mul(yi);
            yi *= y_inv;
        }
    }
    std::vector<Fl> av = lv, bv = rv;
    for (u32 size = N; size > 1; size /= 2) {
        u32 half = size / 2;
        std::span<const Fl> a_lo(av.data(), half), a_hi(av.data() + half, half);
        std::span<const Fl> b_lo(bv.data(), half), b_hi(bv.data() + half, half);
        std::span<const JubExt> G_lo(Gv.data(), half), G_hi(Gv.data() + half, half);
        std::span<const JubExt> H_lo(Hv.data(), half), H_hi(Hv.data() + half, half);

        JubExt L = jub_msm(G_hi, a_lo).add(jub_msm(H_lo, b_hi)).add(U.mul(inner(a_lo, b_hi)));
        JubExt R = jub_msm(G_lo, a_hi).add(jub_msm(H_hi, b_lo)).add(U.mul(inner(a_hi, b_lo)));
        tr.absorb_point("L", L);
        tr.absorb_point("R", R);
        wr.point(L);
        wr.point(R);
        Fl uk = tr.challenge("u"), uk_inv = uk.inv();

        for (u32 i = 0; i < half; i++) {
            av[i] = av[i] * uk + av[half + i] * uk_inv;
            bv[i] = bv[i] * uk_inv + bv[half + i] * uk;
            Gv[i] = Gv[i].mul(uk_inv).add(Gv[half + i].mul(uk));
            Hv[i] = Hv[i].mul(uk).add(Hv[half + i].mul(uk_inv));
        }
        av.resize(half);
        bv.resize(half);
        Gv.resize(half);
        Hv.resize(half);
    }
    wr.scalar(av[0]);
    wr.scalar(bv[0]);

    return {n, s.m, std::move(wr.out)};
}

bool range_verify(std::span<const JubAffine> commitments, u32 n_bits, const RangeProof& proof,
                  const CommitmentParams& params) {
    Shape s;
    if (!compute_shape((u32)commitments.size(), n_bits, s)) return false;
    if (proof.n_bits != n_bits || proof.values != s.m) return false;
    if (proof.bytes.size() != proof_size(s.rounds)) return false;
    const u32 n = n_bits, N = s.N;
    for (const JubAffine& v : commitments)
        if (!jub_in_subgroup(v)) return false;

    Reader rd{proof.bytes};
    JubExt A, S, T1, T2;
    Fl tau_x, mu, t_hat;
    if (!rd.point(A) || !rd.point(S) || !rd.point(T1) || !rd.point(T2)) return false;
    if (!rd.scalar(tau_x) || !rd.scalar(mu) || !rd.scalar(t_hat)) return false;

    const Gens& gen = gens();
    Transcript tr("zkpop/v1/range-proof");
    init_transcript(tr, s, n, commitments);
    tr.absorb_point("A", A);
    tr.absorb_point("S", S);
    Fl y = tr.challenge("y");
    Fl z = tr.challenge("z");
    tr.absorb_point("T1", T1);
    tr.absorb_point("T2", T2);
    Fl x = tr.challenge("x");
    tr.absorb_scalar("tau_x", tau_x);
    tr.absorb_scalar("mu", mu);
    tr.absorb_scalar("t_hat", t_hat);
    Fl w = tr.challenge("w");
    JubExt U = gen.u.mul(w);

    std::vector<JubExt> Ls(s.rounds), Rs(s.rounds);
    std::vector<Fl> uk(s.rounds), uk_inv(s.rounds);
    for (u32 r = 0; r < s.rounds; r++) {
        if (!rd.point(Ls[r]) || !rd.point(Rs[r])) return false;
        tr.absorb_point("L", Ls[r]);
        tr.absorb_point("R", Rs[r]);
        uk[r] = tr.challenge("u");
        uk_inv[r] = uk[r].inv();
    }
    Fl a, b;
    if (!rd.scalar(a) || !rd.scalar(b)) return false;
    if (rd.pos != proof.bytes.size()) return false;

    std::vector<Fl> ypow(N), y_inv_pow(N);
    ypow[0] = y_inv_pow[0] = Fl::one();
    Fl y_inv = y.inv();
    for (u32 i = 1; i < N; i++) {
        ypow[i] = ypow[i - 1] * y;
        y_inv_pow[i] = y_inv_pow[i - 1] * y_inv;
    }
    std::vector<Fl> zpow(s.mp);
    zpow[0] = z * z;
    for (u32 j = 1; j < s.mp; j++) zpow[j] = zpow[j - 1] * z;

    // polynomial check: g^t_hat h^tau_x == g^delta(y,z) V^z-powers T1^x T2^x^2
    Fl sum_y;
    for (u32 i = 0; i < N; i++) sum_y += ypow[i];
    Fl sum_z;
    for (u32 j = 0; j < s.mp; j++) sum_z += zpow[j];
    Fl delta = (z - z * z) * sum_y - z * pow2_minus_one(n) * sum_z;

    JubExt lhs = params.g_tab->mul(t_hat).add(params.h_tab->mul(tau_x));
    JubExt rhs = params.g_tab->mul(delta).add(T1.mul(x)).add(T2.mul(x * x));
    for (u32 j = 0; j < s.m; j++)
        rhs = rhs.add(JubExt::from_affine(commitments[j]).mul(zpow[j]));
    if (!lhs.add(rhs.neg()).is_identity()) return false;

    // inner-product check, with the final bases expanded via the challenge
    // products s_i (so the verifier never folds the generator vectors)
    std::vector<Fl> sv(N);
    for (u32 i = 0; i < N; i++) {
        Fl acc = Fl::one();
        for (u32 r = 0; r < s.rounds; r++)
            acc *= ((i >> (s.rounds - 1 - r)) & 1) ? uk[r] : uk_inv[r];
        sv[i] = acc;
    }

    std::vector<Fl> twopow(n);
    twopow[0] = Fl::one();
    for (u32 bb = 1; bb < n; bb++) twopow[bb] = twopow[bb - 1] + twopow[bb - 1];

    // one combined identity:
    //   A + xS - mu h + (t_hat - ab) U + sum u^2 L + u^-2 R
    //     - sum_i (z + a s_i) G_i
    //     + sum_i (z + y^-i (z^{2+j} 2^{i mod n} - b s_i^-1)) H_i  ==  0
    // where s_i is the product of round challenges and s_i^-1 is s at the
    // bit-complement index (every factor flips)
    JubExt check = A.add(S.mul(x)).add(params.h_tab->mul(mu).neg()).add(U.mul(t_hat - a * b));
    for (u32 r = 0; r < s.rounds; r++)
        check = check.add(Ls[r].mul(uk[r] * uk[r])).add(Rs[r].mul(uk_inv[r] * uk_inv[r]));
    for (u32 i = 0; i < N; i++) {
        Fl g_exp = z + a * sv[i];
        Fl h_exp = z + y_inv_pow[i] * (zpow[i / n] * twopow[i % n] - b * sv[N - 1 - i]);
        check = check.add(gen.G[i].mul(g_exp).neg()).add(gen.H[i].mul(h_exp));
    }
    return check.is_identity();
}

// --- protocol wrappers ---------------------------------------------------

RangeProof window_range_prove(std::span<const FeatureCommitment> features,
                              std::span<const u32> lower, const CommitmentParams& params,
                              std::span<const u8> rng_seed) {
    if (features.size() != lower.size() || features.empty())
        throw std::invalid_argument("feature and bound counts differ");
    std::vector<FeatureCommitment> shifted(features.size());
    for (size_t j = 0; j < features.size(); j++) {
        // same randomness, value shifted down by the floor; below-floor
        // values wrap to huge scalars and fail the range check in the core
        Fl sv = features[j].value - Fl::from_u64(lower[j]);
        JubExt p = JubExt::from_affine(features[j].point)
                       .add(params.g_tab->mul(Fl::from_u64(lower[j])).neg());
        shifted[j] = {p.to_affine(), sv, features[j].randomness};
    }
    return range_prove(shifted, 16, params, rng_seed);
}

bool window_range_verify(std::span<const JubAffine> commitments, std::span<const u32> lower,
                         const RangeProof& proof, const CommitmentParams& params) {
    if (commitments.size() != lower.size() || commitments.empty()) return false;
    for (const JubAffine& c : commitments)
        if (!jub_in_subgroup(c)) return false;
    std::vector<JubAffine> shifted(commitments.size());
    for (size_t j = 0; j < commitments.size(); j++)
        shifted[j] = JubExt::from_affine(commitments[j])
                         .add(params.g_tab->mul(Fl::from_u64(lower[j])).neg())
                         .to_affine();
    return range_verify(shifted, 16, proof, params);
}

RangeProof delta_range_prove(u64 delta_ms, const Fl& randomness, u64 d_min_ms, u64 d_max_ms,
                             const CommitmentParams& params, std::span<const u8> rng_seed) {
    if (d_min_ms > d_max_ms || d_max_ms - d_min_ms > 0xFFFFFFFFull)
        throw std::invalid_argument("spacing bounds must span at most 32 bits");
    if (delta_ms < d_min_ms || delta_ms > d_max_ms)
        throw std::invalid_argument("delta outside the spacing bounds");
    // delta - d_min >= 0 under r, and d_max - delta >= 0 under -r; together
    // they pin delta into [d_min, d_max] exactly (the two committed values
    // sum to the public width, so neither side can wrap)
    FeatureCommitment lo =
        pedersen_open_commit(Fl::from_u64(delta_ms - d_min_ms), randomness, params);
    FeatureCommitment hi =
        pedersen_open_commit(Fl::from_u64(d_max_ms - delta_ms), -randomness, params);
    std::array<FeatureCommitment, 2> both{lo, hi};
    return range_prove(both, 32, params, rng_seed);
}

bool delta_range_verify(const JubAffine& c_delta, u64 d_min_ms, u64 d_max_ms,
                        const RangeProof& proof, const CommitmentParams& params) {
    if (d_min_ms > d_max_ms || d_max_ms - d_min_ms > 0xFFFFFFFFull) return false;
    if (!jub_in_subgroup(c_delta)) return false;
    JubExt cd = JubExt::from_affine(c_delta);
    std::array<JubAffine, 2> shifted{
        cd.add(params.g_tab->mul(Fl::from_u64(d_min_ms)).neg()).to_affine(),
        params.g_tab->mul(Fl::from_u64(d_max_ms)).add(cd.neg()).to_affine(),
    };
    return range_verify(shifted, 32, proof, params);
}

}  // namespace zkpop
