#include <zkpop/privacy.hpp>
#include <zkpop/sha256.hpp>

#include <sodium.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace zkpop {

namespace {

// Seed a Mersenne Twister from caller bytes (or fresh system randomness) via
// one hash, so equal seeds give byte-identical releases.
std::mt19937_64 seeded_engine(std::span<const u8> rng_seed, const char* label) {
    u8 fresh[32];
    Sha256 h;
    h.update(label);
    if (rng_seed.empty()) {
        randombytes_buf(fresh, sizeof fresh);
        h.update({fresh, sizeof fresh});
    } else {
        h.update(rng_seed);
    }
    Digest d = h.final();
    std::seed_seq seq(d.begin(), d.end());
    return std::mt19937_64(seq);
}

} // namespace

void DPBudget::validate() const {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("DPBudget: eps must be positive");
    if (!(delta > 0.0) || !(delta < 1.0)) throw std::invalid_argument("DPBudget: delta must lie in (0, 1)");
    if (cohort < 2) throw std::invalid_argument("DPBudget: cohort must hold at least two records");
}

double PopulationParams::window_lo_ms(u32 j) const {
    return std::clamp(mu_ms.at(j) - bounds_mult * sigma_ms.at(j), 0.0, 1000.0);
}

double PopulationParams::window_hi_ms(u32 j) const {
    return std::clamp(mu_ms.at(j) + bounds_mult * sigma_ms.at(j), 0.0, 1000.0);
}

void PopulationParams::validate() const {
    if (mu_ms.empty() || mu_ms.size() != sigma_ms.size())
        throw std::invalid_argument("PopulationParams: mean/spread vectors must be nonempty and equal-sized");
    if (bounds_mult < 1) throw std::invalid_argument("PopulationParams: bounds multiplier must be >= 1");
    for (size_t j = 0; j < mu_ms.size(); j++) {
        if (!std::isfinite(mu_ms[j]) || !std::isfinite(sigma_ms[j]))
            throw std::invalid_argument("PopulationParams: parameters must be finite");
        if (sigma_ms[j] < 0.0 || (provenance == Provenance::raw && sigma_ms[j] == 0.0))
            throw std::invalid_argument("PopulationParams: spread must be positive");
    }
}

double gaussian_sigma(double sensitivity, double eps, double delta) {
    if (!(sensitivity > 0.0) || !std::isfinite(sensitivity))
        throw std::invalid_argument("gaussian_sigma: sensitivity must be positive");
    if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("gaussian_sigma: eps must be positive");
    if (!(delta > 0.0) || !(delta < 1.0)) throw std::invalid_argument("gaussian_sigma: delta must lie in (0, 1)");
    return sensitivity * std::sqrt(2.0 * std::log(1.25 / delta)) / eps;
}

std::vector<double> clamped_feature_means(const std::vector<std::vector<double>>& rows,
                                          std::span<const FeatureBounds> bounds) {
    if (rows.empty()) throw std::invalid_argument("clamped_feature_means: no records");
    const size_t m = bounds.size();
    std::vector<double> sums(m, 0.0);
    for (const auto& row : rows) {
        if (row.size() != m) throw std::invalid_argument("clamped_feature_means: ragged record");
        for (size_t j = 0; j < m; j++) {
            if (!(bounds[j].lo_ms < bounds[j].hi_ms))
                throw std::invalid_argument("clamped_feature_means: empty clamp interval");
            sums[j] += std::clamp(row[j], bounds[j].lo_ms, bounds[j].hi_ms);
        }
    }
    for (size_t j = 0; j < m; j++) sums[j] /= static_cast<double>(rows.size());
    return sums;
}

PopulationParams release_population(const std::vector<std::vector<double>>& rows,
                                    std::span<const FeatureBounds> bounds,
                                    const DPBudget& budget, u32 bounds_mult,
                                    std::span<const u8> rng_seed) {
    budget.validate();
    if (rows.size() != budget.cohort)
        throw std::invalid_argument("release_population: record count does not match the declared cohort");
    const size_t n = rows.size();
    const size_t m = bounds.size();
    if (m == 0) throw std::invalid_argument("release_population: no features");

    std::vector<double> mean = clamped_feature_means(rows, bounds);

    // Second moment of the values shifted down by the lower bound, so a
    // one-record change moves it by at most (hi-lo)^2 / N.
    std::vector<double> m2(m, 0.0);
    for (const auto& row : rows) {
        for (size_t j = 0; j < m; j++) {
            double y = std::clamp(row[j], bounds[j].lo_ms, bounds[j].hi_ms) - bounds[j].lo_ms;
            m2[j] += y * y;
        }
    }
    for (size_t j = 0; j < m; j++) m2[j] /= static_cast<double>(n);

    auto rng = seeded_engine(rng_seed, "dp-release");
    std::normal_distribution<double> gauss(0.0, 1.0);

    PopulationParams out;
    out.bounds_mult = bounds_mult;
    out.provenance = Provenance::dp_released;
    out.eps = budget.eps;
    out.delta = budget.delta;
    out.cohort = budget.cohort;
    out.mu_ms.resize(m);
    out.sigma_ms.resize(m);
    for (size_t j = 0; j < m; j++) {
        const double width = bounds[j].hi_ms - bounds[j].lo_ms;
        const double s_mean = gaussian_sigma(width / static_cast<double>(n), budget.eps, budget.delta);
        const double s_m2 = gaussian_sigma(width * width / static_cast<double>(n), budget.eps, budget.delta);
        // Clamping the noisy outputs back into their feasible ranges is pure
        // post-processing and spends no additional budget.
        double mu = std::clamp(mean[j] + s_mean * gauss(rng), bounds[j].lo_ms, bounds[j].hi_ms);
        double noisy_m2 = m2[j] + s_m2 * gauss(rng);
        double var = noisy_m2 - (mu - bounds[j].lo_ms) * (mu - bounds[j].lo_ms);
        double sigma = std::sqrt(std::max(0.0, var));
        out.mu_ms[j] = mu;
        out.sigma_ms[j] = std::min(sigma, width);
    }
    out.validate();
    return out;
}

} // namespace zkpop
