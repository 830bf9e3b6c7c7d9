#pragma once
#include <zkpop/ff.hpp>

#include <vector>

namespace zkpop {

// Radix-2 evaluation domain in Fr (two-adicity 28 allows sizes to 2^28).
// Forward transforms take coefficient vectors to evaluations over the
// subgroup generated by omega; coset variants evaluate over shift * <omega>,
// where the vanishing polynomial of the subgroup is the nonzero constant
// shift^size - 1 (this is what makes quotient computation pointwise).
struct EvalDomain {
    u32 log_size = 0;
    u64 size = 1;
    Fr omega, omega_inv;
    Fr size_inv;
    Fr shift, shift_inv;  // multiplicative generator of Fr*

    static EvalDomain radix2(u64 min_size);  // throws when min_size > 2^28

    void fft(std::vector<Fr>& a) const;  // in place; a.size() must equal size
    void ifft(std::vector<Fr>& a) const;
    void coset_fft(std::vector<Fr>& a) const;
    void coset_ifft(std::vector<Fr>& a) const;

    Fr vanishing_at(const Fr& x) const;  // x^size - 1

    // All Lagrange basis values L_i(x) over the domain, including the
    // indicator case when x lies on the domain itself.
    std::vector<Fr> lagrange_at(const Fr& x) const;
};

}  // namespace zkpop
