#include <zkpop/simulate.hpp>

#include <cmath>
#include <string>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

using namespace zkpop;

namespace {

double bal(const SimulationReport& rep, const std::string& label) {
    const SimulationRow* row = rep.find(label);
    REQUIRE(row != nullptr);
    return row->balanced_accuracy;
}

} // namespace

TEST_CASE("synthetic writers reproduce the configured autocorrelation") {
    SimulationConfig cfg;
    cfg.sessions = 300;
    cfg.checkpoints = 120;
    cfg.m = 3;
    cfg.seed = 11;
    PopulationParams pop = default_population(cfg.m, cfg.bounds_mult);

    auto traces = generate_traces(pop, cfg);
    for (u32 j = 0; j < cfg.m; j++) {
        double r1 = empirical_lag1(traces, j);
        CHECK(r1 > 0.111 - 0.03);
        CHECK(r1 < 0.111 + 0.03);
    }

    cfg.writer.r1 = 0.0;
    cfg.seed = 12;
    auto iid = generate_traces(pop, cfg);
    CHECK(std::abs(empirical_lag1(iid, 0)) < 0.03);

    CHECK_THROWS_AS(empirical_lag1(traces, 99), std::invalid_argument);
}

TEST_CASE("traces stay inside their domains and are reproducible") {
    SimulationConfig cfg;
    cfg.sessions = 200;
    cfg.seed = 21;
    PopulationParams pop = default_population(cfg.m, cfg.bounds_mult);

    auto traces = generate_traces(pop, cfg);
    REQUIRE(traces.size() == 2 * cfg.sessions);
    double adv_sum = 0.0;
    u64 adv_count = 0;
    for (size_t s = 0; s < traces.size(); s++) {
        CHECK(traces[s].genuine == (s < cfg.sessions));
        REQUIRE(traces[s].features.size() == cfg.checkpoints);
        REQUIRE(traces[s].gap_ms.size() == cfg.checkpoints);
        for (u32 t = 0; t < cfg.checkpoints; t++) {
            CHECK(traces[s].gap_ms[t] >= cfg.d_min_ms);
            CHECK(traces[s].gap_ms[t] <= cfg.d_max_ms);
            for (u32 j = 0; j < cfg.m; j++) {
                double v = traces[s].features[t][j];
                CHECK(v >= 0.0);
                CHECK(v <= 1000.0);
                if (!traces[s].genuine) {
                    adv_sum += v;
                    adv_count++;
                }
            }
        }
    }
    // blind-guess features are roughly uniform over the domain
    CHECK(std::abs(adv_sum / adv_count - 500.0) < 15.0);

    auto again = generate_traces(pop, cfg);
    bool identical = true;
    for (size_t s = 0; s < traces.size(); s++) {
        identical &= traces[s].gap_ms == again[s].gap_ms;
        identical &= traces[s].features == again[s].features;
    }
    CHECK(identical);

    cfg.m = 5; // population no longer matches
    CHECK_THROWS_AS(generate_traces(pop, cfg), std::invalid_argument);
}

TEST_CASE("blind guessing passes a checkpoint at the documented rate") {
    SimulationConfig cfg;
    cfg.seed = 5;
    SimulationRow row = run_configuration("cp-rate", cfg);
    CHECK(row.adversary_checkpoint_accept > 0.03);
    CHECK(row.adversary_checkpoint_accept < 0.09);
    // over 20-checkpoint sessions the compounding drives acceptance to zero
    CHECK(row.tnr >= 0.999);
    CHECK(row.tpr >= 0.99);
}

TEST_CASE("sweep report: identities, orderings, and serialization") {
    SimulationReport rep = standard_sweep(7);
    REQUIRE(rep.rows.size() == 22);

    for (const auto& r : rep.rows) {
        CHECK(r.balanced_accuracy == doctest::Approx((r.tpr + r.tnr) / 2.0).epsilon(1e-12));
        CHECK(r.tpr >= 0.0);
        CHECK(r.tpr <= 1.0);
        CHECK(r.tnr >= 0.0);
        CHECK(r.tnr <= 1.0);
    }

    // privacy budget: accuracy degrades as the budget tightens
    CHECK(bal(rep, "no-dp") >= bal(rep, "eps-1.0"));
    CHECK(bal(rep, "eps-1.0") >= bal(rep, "eps-0.1"));
    CHECK(bal(rep, "eps-0.1") <= bal(rep, "no-dp") - 0.2); // the mechanism is live
    CHECK(rep.find("eps-0.1")->tpr <= 0.3); // collapsed windows reject real writers

    // 16-bit quantization costs essentially nothing
    CHECK(std::abs(bal(rep, "no-dp") - bal(rep, "no-dp-exact")) <= 0.01);

    // more features separate better; strictly so at per-checkpoint granularity
    CHECK(bal(rep, "m-6-n-1-naive") + 0.01 < bal(rep, "m-12-n-1-naive"));
    CHECK(bal(rep, "m-12-n-1-naive") + 0.01 < bal(rep, "m-24-n-1-naive"));
    CHECK(bal(rep, "m-6-n-20-naive") <= bal(rep, "m-12-n-20-naive"));
    CHECK(bal(rep, "m-12-n-20-naive") <= bal(rep, "m-24-n-20-naive"));
    CHECK(bal(rep, "m-6-n-20-matched") <= bal(rep, "m-12-n-20-matched") + 1e-12);
    CHECK(bal(rep, "m-12-n-20-matched") <= bal(rep, "m-24-n-20-matched") + 1e-12);
    // a marginal-matched forger defeats population windows: a documented limit
    CHECK(bal(rep, "m-12-n-20-matched") <= 0.6);

    // tighter windows win against blind guessing; strictly so at n = 1
    CHECK(bal(rep, "w-2-n-1") > bal(rep, "w-3-n-1") + 0.01);
    CHECK(bal(rep, "w-3-n-1") > bal(rep, "w-4-n-1") + 0.01);
    CHECK(bal(rep, "w-2-n-20") >= bal(rep, "w-3-n-20"));
    CHECK(bal(rep, "w-3-n-20") >= bal(rep, "w-4-n-20"));

    // the documented per-checkpoint band holds wherever m=12, 3 sigma applies
    for (const char* label : {"no-dp", "m-12-n-20-naive", "w-3-n-20"}) {
        double cp = rep.find(label)->adversary_checkpoint_accept;
        CHECK(cp > 0.03);
        CHECK(cp < 0.09);
    }

    // serialization
    std::string csv = rep.csv();
    CHECK(csv.rfind("label,adversary,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 23); // header + 22 rows
    CHECK(rep.table().find("balacc") != std::string::npos);
    CHECK(rep.find("does-not-exist") == nullptr);

    // seeded determinism
    CHECK(standard_sweep(7).csv() == csv);
}
