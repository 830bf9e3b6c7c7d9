#pragma once
#include <zkpop/sha256.hpp>

#include <vector>

namespace zkpop {

// Sparse linear combination over circuit wires.  Wire 0 carries the constant
// one, so plain constants are single terms on wire 0.  Terms stay sorted by
// wire index with duplicates merged and zeros dropped — repeated arithmetic
// (Poseidon partial rounds in particular) would otherwise blow up row width.
struct LinComb {
    std::vector<std::pair<u32, Fr>> terms;

    static LinComb zero() { return {}; }
    static LinComb constant(const Fr& c);
    static LinComb one() { return constant(Fr::one()); }
    static LinComb var(u32 idx, const Fr& coeff = Fr::one());

    bool is_constant() const {
        return terms.empty() || (terms.size() == 1 && terms[0].first == 0);
    }
    Fr constant_value() const {  // only meaningful when is_constant()
        return terms.empty() ? Fr::zero() : terms[0].second;
    }

    LinComb scaled(const Fr& k) const;
    LinComb operator-() const { return scaled(-Fr::one()); }
    friend LinComb operator+(const LinComb& a, const LinComb& b);
    friend LinComb operator-(const LinComb& a, const LinComb& b);
    LinComb& operator+=(const LinComb& b);
};

// one rank-1 row: <a,x> * <b,x> = <c,x>
struct Constraint {
    LinComb a, b, c;
};

// Constraint system built together with its wire assignment.  Wire layout:
// [0] = 1, [1 .. num_public] = public inputs (allocated first), rest private.
// Synthesis is value-independent: the same circuit code run on different
// assignments produces identical constraints, which setup relies on.
struct ConstraintSystem {
    u32 num_vars = 1;
    u32 num_public = 0;
    std::vector<Constraint> constraints;
    std::vector<Fr> assignment{Fr::one()};

    u32 alloc_public(const Fr& value);  // must precede all private allocations
    u32 alloc(const Fr& value);

    void enforce(LinComb a, LinComb b, LinComb c);
    void enforce_equal(LinComb a, LinComb b) {
        enforce(std::move(a) - std::move(b), LinComb::one(), LinComb::zero());
    }

    Fr eval(const LinComb& lc) const;
    bool is_satisfied() const { return first_violation() < 0; }
    long first_violation() const;  // index of first failing row, -1 if none

    // --- base gadgets ---
    // product wire for <a> * <b>
    u32 mul(const LinComb& a, const LinComb& b);
    // wire constrained to {0, 1}
    u32 alloc_bool(bool bit);
    // nbits boolean wires, least-significant first, recomposing to x; a value
    // that does not fit nbits leaves the system unsatisfiable
    std::vector<u32> decompose(const LinComb& x, u32 nbits);

    // digest over the constraint structure (not the assignment): two systems
    // with equal digests accept the same proofs under the same keys
    Digest structure_digest() const;
};

}  // namespace zkpop
