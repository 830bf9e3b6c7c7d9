#include <zkpop/privacy.hpp>

#include <cmath>
#include <string>
#include <vector>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

using namespace zkpop;

namespace {

std::vector<u8> seed_bytes(const std::string& s) { return {s.begin(), s.end()}; }

} // namespace

TEST_CASE("noise scale formula matches direct evaluation and is monotone") {
    // sqrt(2 ln(1.25e5)) evaluated independently
    CHECK(gaussian_sigma(1.0, 1.0, 1e-5) == doctest::Approx(4.844805).epsilon(1e-5));
    // linear in the sensitivity, inverse in eps
    CHECK(gaussian_sigma(20.0, 1.0, 1e-5) == doctest::Approx(20.0 * 4.844805).epsilon(1e-5));
    CHECK(gaussian_sigma(1.0, 2.0, 1e-5) ==
          doctest::Approx(gaussian_sigma(1.0, 1.0, 1e-5) / 2.0).epsilon(1e-12));

    // strictly decreasing in eps, increasing in sensitivity, decreasing in delta
    double prev = 1e300;
    for (double eps : {0.1, 0.5, 1.0, 2.0, 8.0}) {
        double s = gaussian_sigma(1.0, eps, 1e-5);
        CHECK(s < prev);
        prev = s;
    }
    prev = 0.0;
    for (double sens : {0.5, 1.0, 3.0, 10.0}) {
        double s = gaussian_sigma(sens, 1.0, 1e-5);
        CHECK(s > prev);
        prev = s;
    }
    prev = 1e300;
    for (double delta : {1e-9, 1e-7, 1e-5, 1e-3, 1e-1}) {
        double s = gaussian_sigma(1.0, 1.0, delta);
        CHECK(s < prev);
        prev = s;
    }

    CHECK_THROWS_AS(gaussian_sigma(0.0, 1.0, 1e-5), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_sigma(1.0, 0.0, 1e-5), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_sigma(1.0, -1.0, 1e-5), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_sigma(1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_sigma(1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("released parameters are reproducible and calibrated to the formula") {
    const u32 N = 50;
    std::vector<std::vector<double>> rows(N, std::vector<double>(2));
    for (u32 r = 0; r < N; r++) {
        rows[r][0] = 470.0 + 10.0 * (r % 7);
        rows[r][1] = 520.0 - 15.0 * (r % 5);
    }
    std::vector<FeatureBounds> bounds(2);
    DPBudget budget{1.0, 1e-5, N};

    auto fixed = release_population(rows, bounds, budget, 3, seed_bytes("fixed"));
    auto again = release_population(rows, bounds, budget, 3, seed_bytes("fixed"));
    CHECK(fixed.mu_ms == again.mu_ms);
    CHECK(fixed.sigma_ms == again.sigma_ms);
    CHECK(fixed.provenance == Provenance::dp_released);
    CHECK(fixed.eps == 1.0);
    CHECK(fixed.cohort == N);
    auto other = release_population(rows, bounds, budget, 3, seed_bytes("other"));
    CHECK(fixed.mu_ms != other.mu_ms);

    // a huge budget washes the noise out
    DPBudget loose{1e9, 1e-5, N};
    auto exact = release_population(rows, bounds, loose, 3, seed_bytes("loose"));
    auto true_means = clamped_feature_means(rows, bounds);
    for (u32 j = 0; j < 2; j++) {
        CHECK(std::abs(exact.mu_ms[j] - true_means[j]) < 0.01);
        CHECK(exact.sigma_ms[j] > 0.0); // real spread in the data survives
    }

    // empirical noise std over many releases matches the calibration within 3%
    const double expected = gaussian_sigma(1000.0 / N, budget.eps, budget.delta);
    const u32 trials = 10000;
    double sum[2] = {0, 0}, sumsq[2] = {0, 0};
    for (u32 t = 0; t < trials; t++) {
        auto rel = release_population(rows, bounds, budget, 3,
                                      seed_bytes("cal-" + std::to_string(t)));
        for (u32 j = 0; j < 2; j++) {
            double noise = rel.mu_ms[j] - true_means[j];
            sum[j] += noise;
            sumsq[j] += noise * noise;
        }
    }
    for (u32 j = 0; j < 2; j++) {
        double mean = sum[j] / trials;
        double stdev = std::sqrt(sumsq[j] / trials - mean * mean);
        CHECK(stdev == doctest::Approx(expected).epsilon(0.03));
    }

    // refusal paths
    CHECK_THROWS_AS(release_population(rows, bounds, DPBudget{1.0, 1e-5, 1}, 3, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(release_population(rows, bounds, DPBudget{1.0, 1e-5, N + 1}, 3, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(release_population(rows, bounds, DPBudget{-1.0, 1e-5, N}, 3, {}),
                    std::invalid_argument);
    std::vector<std::vector<double>> one_row{{1.0, 2.0}};
    CHECK_THROWS_AS(release_population(one_row, bounds, DPBudget{1.0, 1e-5, 1}, 3, {}),
                    std::invalid_argument);
}

TEST_CASE("one-record changes move a clamped mean by exactly the sensitivity bound") {
    // eight records keep the division exact in binary floating point
    std::vector<std::vector<double>> low{{100}, {200}, {300}, {400},
                                         {500}, {600}, {700}, {-50}};
    std::vector<std::vector<double>> high = low;
    high[7][0] = 12345.0; // clamps to 1000, the other end of the domain
    std::vector<FeatureBounds> bounds(1);

    double lo_mean = clamped_feature_means(low, bounds)[0];
    double hi_mean = clamped_feature_means(high, bounds)[0];
    CHECK(hi_mean - lo_mean == 1000.0 / 8.0); // exact, not approximate

    // intermediate perturbations never exceed the bound
    for (double v : {0.0, 250.0, 999.0, 2000.0, -1.0}) {
        auto rows = low;
        rows[3][0] = v;
        double shifted = clamped_feature_means(rows, bounds)[0];
        CHECK(std::abs(shifted - lo_mean) <= 1000.0 / 8.0 + 1e-9);
    }
}

TEST_CASE("leakage floor matches binary entropy and keeps its caveat") {
    CHECK(minimum_leakage_bits(0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(minimum_leakage_bits(0.01) == doctest::Approx(0.919207).epsilon(2e-5));
    CHECK(minimum_leakage_bits(0.058) == doctest::Approx(0.680546).epsilon(2e-4));

    for (double a : {0.01, 0.058, 0.1, 0.3, 0.42}) {
        double l = minimum_leakage_bits(a);
        CHECK(l >= 0.0);
        CHECK(l <= 1.0);
        CHECK(l == doctest::Approx(minimum_leakage_bits(1.0 - a)).epsilon(1e-12));
    }

    std::string note = minimum_leakage_note();
    CHECK(note.find("0.66") != std::string::npos);
    CHECK(note.find("0.681") != std::string::npos);

    CHECK_THROWS_AS(minimum_leakage_bits(0.0), std::invalid_argument);
    CHECK_THROWS_AS(minimum_leakage_bits(1.0), std::invalid_argument);
    CHECK_THROWS_AS(minimum_leakage_bits(-0.2), std::invalid_argument);
    CHECK_THROWS_AS(binary_entropy_bits(1.0), std::invalid_argument);
}

TEST_CASE("session-level false-accept bounds") {
    auto iid = session_false_accept(0.058, 120, 0.0);
    CHECK(iid.n_eff == 120.0);
    CHECK(iid.log10_bound == doctest::Approx(-148.3886).epsilon(1e-5));
    CHECK(iid.log10_bound < -148.0);

    auto corr = session_false_accept(0.058, 120, 0.111);
    CHECK(corr.n_eff == doctest::Approx(96.0216).epsilon(1e-5));
    CHECK(corr.n_eff < iid.n_eff); // correlation only weakens the bound

    auto broad = session_false_accept(0.329, 120, 0.111);
    CHECK(broad.log10_bound == doctest::Approx(-46.36).epsilon(1e-3));
    CHECK(broad.log10_bound < -46.0);

    CHECK_THROWS_AS(session_false_accept(0.0, 120, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(session_false_accept(1.0, 120, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(session_false_accept(0.5, 0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(session_false_accept(0.5, 10, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(session_false_accept(0.5, 10, -0.1), std::invalid_argument);
}

TEST_CASE("audit detection: closed form and Monte Carlo agree") {
    CHECK(detection_probability(0.0, 2, 120) == 0.0);
    CHECK(detection_probability(1.0, 1, 1) == 1.0);
    CHECK(detection_probability(0.1, 2, 20) == doctest::Approx(0.985219).epsilon(1e-5));
    CHECK(detection_probability(0.1, 2, 5) == doctest::Approx(0.651322).epsilon(1e-5));
    // the n = 120 miss probability sits at the 10^-11 scale
    double miss = 1.0 - detection_probability(0.1, 2, 120);
    CHECK(std::log10(miss) == doctest::Approx(-10.9818).epsilon(1e-3));

    for (u32 n : {5u, 20u}) {
        double analytic = detection_probability(0.1, 2, n);
        double mc = fabrication_detection_rate(0.1, 2, n, 4096, 20000, 42);
        CHECK(std::abs(mc - analytic) < 0.01);
    }
    CHECK(fabrication_detection_rate(0.1, 2, 5, 4096, 5000, 7) ==
          fabrication_detection_rate(0.1, 2, 5, 4096, 5000, 7));
    CHECK(fabrication_detection_rate(0.0, 2, 5, 4096, 1000, 7) == 0.0);
    CHECK(fabrication_detection_rate(1.0, 2, 5, 4096, 1000, 7) == 1.0);

    CHECK_THROWS_AS(detection_probability(-0.1, 2, 5), std::invalid_argument);
    CHECK_THROWS_AS(detection_probability(1.1, 2, 5), std::invalid_argument);
    CHECK_THROWS_AS(detection_probability(0.5, 0, 5), std::invalid_argument);
    CHECK_THROWS_AS(fabrication_detection_rate(0.5, 9, 1, 8, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(fabrication_detection_rate(0.5, 1, 1, 1, 10, 1), std::invalid_argument);
}
