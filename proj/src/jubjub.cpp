#include <zkpop/jubjub.hpp>
#include <zkpop/sha256.hpp>

namespace zkpop {

static Fr fr_from_dec(const char* s) {
    Fr acc = Fr::zero();
    Fr ten = Fr::from_u64(10);
    for (; *s; s++) acc = acc * ten + Fr::from_u64((u64)(*s - '0'));
    return acc;
}

JubAffine jub_generator() {
    static const JubAffine g = {
        fr_from_dec("5299619240641551281634865583518297030282874472190772894086521144482721001553"),
        fr_from_dec("16950150798460657717958625567821834550301663161624707787222815936182638968203")};
    return g;
}

bool jub_on_curve(const JubAffine& p) {
    Fr x2 = p.x.square(), y2 = p.y.square();
    return jub_a() * x2 + y2 == Fr::one() + jub_d() * x2 * y2;
}

bool jub_in_subgroup(const JubAffine& p) {
    if (!jub_on_curve(p)) return false;
    return JubExt::from_affine(p).mul(JubOrderParams::MOD).is_identity();
}

// add-2008-hwcd, complete for a square / d non-square
JubExt JubExt::add(const JubExt& o) const {
    Fr A = X * o.X;
    Fr B = Y * o.Y;
    Fr C = jub_d() * T * o.T;
    Fr D = Z * o.Z;
    Fr E = (X + Y) * (o.X + o.Y) - A - B;
    Fr F = D - C;
    Fr G = D + C;
    Fr H = B - jub_a() * A;
    return {E * F, G * H, F * G, E * H};
}

JubExt JubExt::dbl() const {
    Fr A = X.square();
    Fr B = Y.square();
    Fr C = Z.square().dbl();
    Fr D = jub_a() * A;
    Fr E = (X + Y).square() - A - B;
    Fr G = D + B;
    Fr F = G - C;
    Fr H = D - B;
    return {E * F, G * H, F * G, E * H};
}

JubExt JubExt::mul(const Limbs& k) const {
    // 4-bit fixed windows over the 256-bit scalar
    JubExt tab[16];
    tab[0] = identity();
    tab[1] = *this;
    for (int i = 2; i < 16; i++) tab[i] = tab[i - 1].add(*this);
    JubExt acc = identity();
    bool started = false;
    for (int w = 63; w >= 0; w--) {
        if (started)
            for (int i = 0; i < 4; i++) acc = acc.dbl();
        u32 nib = (u32)((k[w / 16] >> (4 * (w % 16))) & 0xf);
        if (nib) {
            acc = started ? acc.add(tab[nib]) : tab[nib];
            started = true;
        }
    }
    return started ? acc : identity();
}

JubAffine JubExt::to_affine() const {
    Fr zi = Z.inv();
    return {X * zi, Y * zi};
}

std::array<u8, 32> jub_serialize(const JubAffine& p) {
    std::array<u8, 32> out = p.y.to_bytes();
    if (p.x.canonical_is_odd()) out[31] |= 0x80;
    return out;
}

std::optional<JubAffine> jub_deserialize(const std::array<u8, 32>& bytes) {
    std::array<u8, 32> yb = bytes;
    bool x_odd = (yb[31] & 0x80) != 0;
    yb[31] &= 0x7f;
    auto y = Fr::from_bytes(yb.data());
    if (!y) return std::nullopt;
    // x^2 = (1 - y^2) / (a - d y^2)
    Fr y2 = y->square();
    Fr den = jub_a() - jub_d() * y2;
    if (den.is_zero()) return std::nullopt;
    Fr x2 = (Fr::one() - y2) * den.inv();
    auto x = x2.sqrt();
    if (!x) return std::nullopt;
    if (x->is_zero()) {
        if (x_odd) return std::nullopt;  // the sign of zero must be clear
        return JubAffine{Fr::zero(), *y};
    }
    if (x->canonical_is_odd() != x_odd) *x = -*x;
    return JubAffine{*x, *y};
}

JubAffine jub_hash_to_subgroup(std::string_view tag, u32 index) {
    for (u32 ctr = 0; ctr < 256; ctr++) {
        Digest dg = Sha256().update(tag).update_u32(index).update_u32(ctr).final();
        std::array<u8, 32> yb;
        std::copy(dg.begin(), dg.end(), yb.begin());
        yb[31] &= 0x3f;
        auto y = Fr::from_bytes(yb.data());
        if (!y) continue;
        Fr y2 = y->square();
        Fr den = jub_a() - jub_d() * y2;
        if (den.is_zero()) continue;
        auto x = ((Fr::one() - y2) * den.inv()).sqrt();
        if (!x) continue;
        if (x->canonical_is_odd()) *x = -*x;
        JubExt q = JubExt::from_affine({*x, *y});
        q = q.dbl().dbl().dbl();  // clear the cofactor
        if (q.is_identity()) continue;
        return q.to_affine();
    }
    // unreachable: each counter value succeeds with probability ~1/2
    return JubAffine{};
}

JubFixedBase::JubFixedBase(const JubAffine& base) {
    // table[w * 255 + (v - 1)] = (v << 8w) * base for v in 1..255
    table.resize(32 * 255);
    JubExt cur = JubExt::from_affine(base);
    for (int w = 0; w < 32; w++) {
        table[w * 255] = cur;
        for (int v = 2; v <= 255; v++)
            table[w * 255 + v - 1] = table[w * 255 + v - 2].add(cur);
        if (w < 31) cur = table[w * 255 + 254].add(cur);  // 256 * cur
    }
}

JubExt JubFixedBase::mul(const Limbs& k) const {
    JubExt acc = JubExt::identity();
    bool started = false;
    for (int w = 0; w < 32; w++) {
        u32 byte = (u32)((k[w / 8] >> (8 * (w % 8))) & 0xff);
        if (!byte) continue;
        const JubExt& e = table[w * 255 + byte - 1];
        acc = started ? acc.add(e) : e;
        started = true;
    }
    return acc;
}

}  // namespace zkpop
