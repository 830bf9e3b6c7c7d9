#include <zkpop/r1cs.hpp>

#include <stdexcept>

namespace zkpop {

LinComb LinComb::constant(const Fr& c) {
    LinComb out;
    if (!c.is_zero()) out.terms.emplace_back(0, c);
    return out;
}

LinComb LinComb::var(u32 idx, const Fr& coeff) {
    LinComb out;
    if (!coeff.is_zero()) out.terms.emplace_back(idx, coeff);
    return out;
}

LinComb LinComb::scaled(const Fr& k) const {
    LinComb out;
    if (k.is_zero()) return out;
    out.terms.reserve(terms.size());
    for (const auto& [i, c] : terms) out.terms.emplace_back(i, c * k);
    return out;
}

LinComb operator+(const LinComb& a, const LinComb& b) {
    LinComb out;
    out.terms.reserve(a.terms.size() + b.terms.size());
    size_t i = 0, j = 0;
    while (i < a.terms.size() || j < b.terms.size()) {
        if (j == b.terms.size() || (i < a.terms.size() && a.terms[i].first < b.terms[j].first)) {
            out.terms.push_back(a.terms[i++]);
        } else if (i == a.terms.size() || b.terms[j].first < a.terms[i].first) {
            out.terms.push_back(b.terms[j++]);
        } else {
            Fr c = a.terms[i].second + b.terms[j].second;
            if (!c.is_zero()) out.terms.emplace_back(a.terms[i].first, c);
            i++, j++;
        }
    }
    return out;
}

LinComb operator-(const LinComb& a, const LinComb& b) { return a + b.scaled(-Fr::one()); }

LinComb& LinComb::operator+=(const LinComb& b) {
    *this = *this + b;
    return *this;
}

u32 ConstraintSystem::alloc_public(const Fr& value) {
    if (num_public + 1 != num_vars)
        throw std::logic_error("public inputs must be allocated before private wires");
    num_public++;
    assignment.push_back(value);
    return num_vars++;
}

u32 ConstraintSystem::alloc(const Fr& value) {
    assignment.push_back(value);
    return num_vars++;
}

void ConstraintSystem::enforce(LinComb a, LinComb b, LinComb c) {
    constraints.push_back({std::move(a), std::move(b), std::move(c)});
}

Fr ConstraintSystem::eval(const LinComb& lc) const {
    Fr acc = Fr::zero();
    for (const auto& [i, c] : lc.terms) acc = acc + c * assignment[i];
    return acc;
}

long ConstraintSystem::first_violation() const {
    for (size_t i = 0; i < constraints.size(); i++) {
        const Constraint& r = constraints[i];
        if (eval(r.a) * eval(r.b) != eval(r.c)) return (long)i;
    }
    return -1;
}

u32 ConstraintSystem::mul(const LinComb& a, const LinComb& b) {
    u32 out = alloc(eval(a) * eval(b));
    enforce(a, b, LinComb::var(out));
    return out;
}

u32 ConstraintSystem::alloc_bool(bool bit) {
    u32 w = alloc(bit ? Fr::one() : Fr::zero());
    // w * (1 - w) = 0
    enforce(LinComb::var(w), LinComb::one() - LinComb::var(w), LinComb::zero());
    return w;
}

std::vector<u32> ConstraintSystem::decompose(const LinComb& x, u32 nbits) {
    Limbs v = eval(x).to_limbs();
    std::vector<u32> bits;
    bits.reserve(nbits);
    LinComb recomposed;
    Fr pow = Fr::one();
    for (u32 i = 0; i < nbits; i++) {
        bool b = i < 256 && ((v[i / 64] >> (i % 64)) & 1);
        bits.push_back(alloc_bool(b));
        recomposed += LinComb::var(bits.back(), pow);
        pow = pow.dbl();
    }
    enforce_equal(recomposed, x);
    return bits;
}

Digest ConstraintSystem::structure_digest() const {
    Sha256 h;
    h.update("zkpop/v1/r1cs").update_u32(num_vars).update_u32(num_public);
    h.update_u64(constraints.size());
    auto absorb = [&](const LinComb& lc) {
        h.update_u32((u32)lc.terms.size());
        for (const auto& [i, c] : lc.terms) {
            h.update_u32(i);
            h.update(c.to_bytes());
        }
    };
    for (const Constraint& r : constraints) {
        absorb(r.a);
        absorb(r.b);
        absorb(r.c);
    }
    return h.final();
}

}  // namespace zkpop
