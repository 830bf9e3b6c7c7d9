#pragma once
#include <zkpop/privacy.hpp>

namespace zkpop {

// ---------------------------------------------------------------------------
// Synthetic trace generation and the accuracy/privacy sweep
// ---------------------------------------------------------------------------

enum class AdversaryModel {
    naive_uniform,        // features drawn uniformly over the [0, 1000] ms domain
    distribution_matched, // features drawn iid from the population marginals
};

// Hierarchical writer model: each genuine writer keeps a personal mean
// theta_j ~ N(mu_j, (between_frac * sigma_j)^2) per feature, and produces
// checkpoint values theta_j + e_t where e_t is a stationary AR(1) process with
// standard deviation within_frac * sigma_j and lag-1 coefficient r1.  The
// fractions are deliberately small: writers are individually consistent, so
// population-level windows separate them from blind guessing at the
// configured scales.  No claim of behavioral realism is made.
struct WriterModel {
    double between_frac = 0.35;
    double within_frac = 0.08;
    double r1 = 0.111;
};

struct SimulationConfig {
    u32 sessions = 500; // per class (genuine and adversarial)
    u32 checkpoints = 20;
    u32 m = 12;
    u32 bounds_mult = 3;
    double eps = 0.0; // 0 disables the DP release entirely (exact parameters)
    double delta = 1e-5;
    u32 cohort = 1000;  // calibration records behind each DP release
    u32 releases = 5;   // noise draws averaged per DP configuration
    bool quantize = true; // run features and windows through the 16-bit encoding
    AdversaryModel adversary = AdversaryModel::naive_uniform;
    WriterModel writer;
    u64 d_min_ms = 25000, d_max_ms = 120000;
    u64 seed = 1;
    void validate() const; // throws std::invalid_argument
};

// One labeled session: per-checkpoint feature vectors plus the timing gap
// preceding each checkpoint.
struct SessionTrace {
    bool genuine = false;
    std::vector<std::vector<double>> features; // checkpoints x m, milliseconds
    std::vector<u64> gap_ms;                   // checkpoints entries
};

// Deterministic default population with windows comfortably inside the
// [0, 1000] ms domain at 3 sigma; per-feature means cycle through mid-range
// values and spreads sit near 130 ms.
PopulationParams default_population(u32 m, u32 bounds_mult);

// cfg.sessions genuine followed by cfg.sessions adversarial sessions,
// reproducible from cfg.seed.
std::vector<SessionTrace> generate_traces(const PopulationParams& pop,
                                          const SimulationConfig& cfg);

// Pooled lag-1 autocorrelation of one feature across the genuine sessions,
// with each session demeaned first.
double empirical_lag1(std::span<const SessionTrace> traces, u32 feature);

struct SimulationRow {
    std::string label;
    std::string adversary;
    u32 m = 0, bounds_mult = 0, checkpoints = 0;
    double eps = 0.0; // 0 = exact parameters
    bool quantized = true;
    double tpr = 0.0, tnr = 0.0, balanced_accuracy = 0.0;
    double adversary_checkpoint_accept = 0.0; // per-checkpoint pass rate
};

struct SimulationReport {
    std::vector<SimulationRow> rows;
    std::string csv() const;   // one row per configuration, header included
    std::string table() const; // aligned human-readable summary
    const SimulationRow* find(const std::string& label) const;
};

// Runs one configuration end to end: build the population, generate labeled
// traces, optionally release DP-noised parameters (averaging cfg.releases
// noise draws), apply the acceptance decision (every feature inside its
// window at every checkpoint, every gap inside [d_min, d_max]), and score.
SimulationRow run_configuration(const std::string& label, const SimulationConfig& cfg);

// The standard sweep behind the accuracy/privacy report: DP budget rows,
// quantization comparison, feature-count sweep, and window-width sweep, each
// against the adversary models that make the comparison informative.
SimulationReport standard_sweep(u64 seed);

} // namespace zkpop
