#pragma once
#include <zkpop/ff.hpp>

#include <span>
#include <string>
#include <vector>

namespace zkpop {

// ---------------------------------------------------------------------------
// Differential-privacy release of population feature statistics
// ---------------------------------------------------------------------------

struct DPBudget {
    double eps = 1.0;    // privacy parameter, > 0
    double delta = 1e-5; // failure parameter, in (0, 1)
    u32 cohort = 2;      // number of contributing records, >= 2
    void validate() const; // throws std::invalid_argument
};

// Clamp domain for one feature; inputs are forced into [lo_ms, hi_ms] before
// aggregation so the one-record sensitivity bound (hi-lo)/N holds exactly.
struct FeatureBounds {
    double lo_ms = 0.0;
    double hi_ms = 1000.0;
};

enum class Provenance { raw, dp_released };

// Per-feature mean/spread pair plus the window multiplier used downstream.
// Acceptance windows are [mu - mult*sigma, mu + mult*sigma] clipped to the
// feature domain [0, 1000] ms.  A dp_released instance may carry sigma == 0
// when the noisy second moment collapses; raw parameters require sigma > 0.
struct PopulationParams {
    std::vector<double> mu_ms;
    std::vector<double> sigma_ms;
    u32 bounds_mult = 3;
    Provenance provenance = Provenance::raw;
    double eps = 0.0, delta = 0.0; // budget per released statistic
    u32 cohort = 0;                // records behind a dp_released instance

    u32 m() const { return static_cast<u32>(mu_ms.size()); }
    double window_lo_ms(u32 j) const;
    double window_hi_ms(u32 j) const;
    void validate() const; // throws std::invalid_argument
};

// Minimal noise scale sigma >= sensitivity * sqrt(2 ln(1.25/delta)) / eps for
// one Gaussian-mechanism release.
double gaussian_sigma(double sensitivity, double eps, double delta);

// Column means after clamping each record into its feature's bounds.  Exposed
// separately so the sensitivity property (one record moves a mean by at most
// (hi-lo)/N) is directly testable.
std::vector<double> clamped_feature_means(const std::vector<std::vector<double>>& rows,
                                          std::span<const FeatureBounds> bounds);

// Gaussian-mechanism release of noisy means and spreads over an N x m matrix.
// The mean uses sensitivity (hi-lo)/N; the spread comes from a noisy second
// moment of the shifted values (sensitivity (hi-lo)^2/N) via
// sigma = sqrt(max(0, m2 - mean^2)).  Each statistic consumes (eps, delta), so
// a full release costs (2 eps, 2 delta) under sequential composition.
// rng_seed makes the release reproducible; empty draws fresh randomness.
PopulationParams release_population(const std::vector<std::vector<double>>& rows,
                                    std::span<const FeatureBounds> bounds,
                                    const DPBudget& budget, u32 bounds_mult,
                                    std::span<const u8> rng_seed = {});

// ---------------------------------------------------------------------------
// Analytic calculators: leakage floor, session bounds, audit detection
// ---------------------------------------------------------------------------

// Binary entropy in bits; p must lie in (0, 1).
double binary_entropy_bits(double p);

// Lower bound, in bits, on what any accept/reject decision with per-session
// false-accept rate alpha must reveal about the prover class: 1 - h(alpha).
double minimum_leakage_bits(double alpha);

// Caveat attached to the alpha = 0.058 operating point, where a rounded
// figure of ~0.66 bits is sometimes quoted although direct evaluation of
// 1 - h(0.058) gives ~0.681 bits.  Returned so reports can carry the
// discrepancy verbatim instead of silently reconciling it.
const char* minimum_leakage_note();

struct SessionBound {
    double n_eff;       // autocorrelation-adjusted independent checkpoint count
    double log10_bound; // log10 of the session false-accept bound alpha^n_eff
};

// n_eff = n (1 - r1) / (1 + r1); bound reported as log10(alpha) * n_eff.
SessionBound session_false_accept(double alpha, u32 n, double r1);

// Probability that sampling k of N chain states per checkpoint, over n
// checkpoints, hits at least one fabricated state when a fraction f of the
// chain is fabricated: 1 - (1-f)^{k n}.
double detection_probability(double f, u32 k, u32 n);

// Monte Carlo of the same audit: per checkpoint draw k distinct positions out
// of chain_length, a fraction f of which are fabricated; a session counts as
// detected when any checkpoint samples a fabricated position.
double fabrication_detection_rate(double f, u32 k, u32 n, u32 chain_length, u32 trials,
                                  u64 seed);

} // namespace zkpop
