#include <zkpop/attest_circuit.hpp>
#include <zkpop/simulate.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace zkpop {

namespace {

std::mt19937_64 engine(u64 seed, u64 stream) {
    std::seed_seq seq{seed, stream, u64{0x7a6b706f70}};
    return std::mt19937_64(seq);
}

// Inclusive acceptance windows, either on the millisecond scale or on the
// 16-bit encoded scale the circuit operates on.
struct Windows {
    bool quantized = true;
    std::vector<double> lo_ms, hi_ms;
    std::vector<u32> lo_u, hi_u;
};

Windows build_windows(const PopulationParams& pop, bool quantized) {
    Windows w;
    w.quantized = quantized;
    const u32 m = pop.m();
    if (quantized) {
        w.lo_u.resize(m);
        w.hi_u.resize(m);
        for (u32 j = 0; j < m; j++) {
            u32 mu = encode_fixed_point(std::clamp(pop.mu_ms[j], 0.0, 1000.0));
            u32 sg = encode_fixed_point(std::clamp(pop.sigma_ms[j], 0.0, 1000.0));
            u64 half = static_cast<u64>(pop.bounds_mult) * sg;
            w.lo_u[j] = half >= mu ? 0 : mu - static_cast<u32>(half);
            w.hi_u[j] = static_cast<u32>(std::min<u64>(65535, mu + half));
        }
    } else {
        w.lo_ms.resize(m);
        w.hi_ms.resize(m);
        for (u32 j = 0; j < m; j++) {
            w.lo_ms[j] = pop.window_lo_ms(j);
            w.hi_ms[j] = pop.window_hi_ms(j);
        }
    }
    return w;
}

bool feature_in_window(const Windows& w, u32 j, double value_ms) {
    if (w.quantized) {
        u32 v = encode_fixed_point(std::clamp(value_ms, 0.0, 1000.0));
        return v >= w.lo_u[j] && v <= w.hi_u[j];
    }
    return value_ms >= w.lo_ms[j] && value_ms <= w.hi_ms[j];
}

struct Scores {
    double tpr = 0.0, tnr = 0.0, cp_accept = 0.0;
};

Scores evaluate(std::span<const SessionTrace> traces, const Windows& w, u64 d_min, u64 d_max) {
    u64 genuine = 0, genuine_ok = 0, adv = 0, adv_ok = 0, adv_cp = 0, adv_cp_ok = 0;
    const u32 m = w.quantized ? static_cast<u32>(w.lo_u.size()) : static_cast<u32>(w.lo_ms.size());
    for (const auto& s : traces) {
        bool all_ok = true;
        for (size_t t = 0; t < s.features.size(); t++) {
            bool cp_ok = s.gap_ms[t] >= d_min && s.gap_ms[t] <= d_max;
            for (u32 j = 0; j < m && cp_ok; j++)
                cp_ok = feature_in_window(w, j, s.features[t][j]);
            all_ok &= cp_ok;
            if (!s.genuine) {
                adv_cp++;
                adv_cp_ok += cp_ok ? 1 : 0;
            }
        }
        if (s.genuine) {
            genuine++;
            genuine_ok += all_ok ? 1 : 0;
        } else {
            adv++;
            adv_ok += all_ok ? 1 : 0;
        }
    }
    Scores out;
    out.tpr = genuine ? static_cast<double>(genuine_ok) / genuine : 0.0;
    out.tnr = adv ? static_cast<double>(adv - adv_ok) / adv : 0.0;
    out.cp_accept = adv_cp ? static_cast<double>(adv_cp_ok) / adv_cp : 0.0;
    return out;
}

} // namespace

void SimulationConfig::validate() const {
    if (sessions < 1 || checkpoints < 1 || m < 1)
        throw std::invalid_argument("SimulationConfig: sessions, checkpoints, and m must be >= 1");
    if (bounds_mult < 1) throw std::invalid_argument("SimulationConfig: bounds multiplier must be >= 1");
    if (eps < 0.0 || !std::isfinite(eps)) throw std::invalid_argument("SimulationConfig: eps must be finite and >= 0");
    if (eps > 0.0) {
        DPBudget b{eps, delta, cohort};
        b.validate();
        if (releases < 1) throw std::invalid_argument("SimulationConfig: need at least one release draw");
    }
    if (d_min_ms > d_max_ms) throw std::invalid_argument("SimulationConfig: empty gap interval");
    const auto& wm = writer;
    if (!(wm.between_frac > 0.0) || !(wm.within_frac > 0.0) || !(wm.r1 >= 0.0) || !(wm.r1 < 1.0))
        throw std::invalid_argument("SimulationConfig: bad writer model");
}

PopulationParams default_population(u32 m, u32 bounds_mult) {
    if (m < 1) throw std::invalid_argument("default_population: need at least one feature");
    static constexpr double MU[6] = {440.0, 470.0, 500.0, 530.0, 560.0, 490.0};
    static constexpr double SIGMA[2] = {128.0, 135.0};
    PopulationParams pop;
    pop.bounds_mult = bounds_mult;
    pop.mu_ms.resize(m);
    pop.sigma_ms.resize(m);
    for (u32 j = 0; j < m; j++) {
        pop.mu_ms[j] = MU[j % 6];
        pop.sigma_ms[j] = SIGMA[j % 2];
    }
    pop.validate();
    return pop;
}

std::vector<SessionTrace> generate_traces(const PopulationParams& pop, const SimulationConfig& cfg) {
    pop.validate();
    cfg.validate();
    const u32 m = pop.m();
    if (m != cfg.m) throw std::invalid_argument("generate_traces: feature count mismatch");

    auto rng = engine(cfg.seed, 1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uniform_ms(0.0, 1000.0);
    std::uniform_int_distribution<u64> uniform_gap(cfg.d_min_ms, cfg.d_max_ms);
    const auto& wm = cfg.writer;
    const double ar_innov = std::sqrt(1.0 - wm.r1 * wm.r1);

    auto genuine_gap = [&]() {
        double g = 30000.0 + 1500.0 * gauss(rng);
        return static_cast<u64>(std::clamp<long long>(std::llround(g),
                                                      static_cast<long long>(cfg.d_min_ms),
                                                      static_cast<long long>(cfg.d_max_ms)));
    };

    std::vector<SessionTrace> out;
    out.reserve(2 * static_cast<size_t>(cfg.sessions));

    for (u32 s = 0; s < cfg.sessions; s++) {
        SessionTrace tr;
        tr.genuine = true;
        tr.features.assign(cfg.checkpoints, std::vector<double>(m));
        tr.gap_ms.resize(cfg.checkpoints);
        for (u32 j = 0; j < m; j++) {
            const double sw = pop.sigma_ms[j] * wm.within_frac;
            const double theta = pop.mu_ms[j] + pop.sigma_ms[j] * wm.between_frac * gauss(rng);
            double e = sw * gauss(rng); // stationary start
            for (u32 t = 0; t < cfg.checkpoints; t++) {
                tr.features[t][j] = std::clamp(theta + e, 0.0, 1000.0);
                e = wm.r1 * e + sw * ar_innov * gauss(rng);
            }
        }
        for (u32 t = 0; t < cfg.checkpoints; t++) tr.gap_ms[t] = genuine_gap();
        out.push_back(std::move(tr));
    }

    for (u32 s = 0; s < cfg.sessions; s++) {
        SessionTrace tr;
        tr.genuine = false;
        tr.features.assign(cfg.checkpoints, std::vector<double>(m));
        tr.gap_ms.resize(cfg.checkpoints);
        for (u32 t = 0; t < cfg.checkpoints; t++) {
            for (u32 j = 0; j < m; j++) {
                if (cfg.adversary == AdversaryModel::naive_uniform) {
                    tr.features[t][j] = uniform_ms(rng);
                } else {
                    const double marginal =
                        pop.sigma_ms[j] * std::hypot(wm.between_frac, wm.within_frac);
                    tr.features[t][j] =
                        std::clamp(pop.mu_ms[j] + marginal * gauss(rng), 0.0, 1000.0);
                }
            }
            tr.gap_ms[t] =
                cfg.adversary == AdversaryModel::naive_uniform ? uniform_gap(rng) : genuine_gap();
        }
        out.push_back(std::move(tr));
    }
    return out;
}

double empirical_lag1(std::span<const SessionTrace> traces, u32 feature) {
    double num = 0.0, den = 0.0;
    bool seen = false;
    for (const auto& s : traces) {
        if (!s.genuine || s.features.size() < 2) continue;
        if (feature >= s.features[0].size())
            throw std::invalid_argument("empirical_lag1: feature index out of range");
        seen = true;
        const size_t T = s.features.size();
        double mean = 0.0;
        for (size_t t = 0; t < T; t++) mean += s.features[t][feature];
        mean /= static_cast<double>(T);
        for (size_t t = 0; t < T; t++) {
            const double d = s.features[t][feature] - mean;
            den += d * d;
            if (t + 1 < T) num += d * (s.features[t + 1][feature] - mean);
        }
    }
    if (!seen || den == 0.0)
        throw std::invalid_argument("empirical_lag1: need genuine sessions with at least two checkpoints");
    return num / den;
}

SimulationRow run_configuration(const std::string& label, const SimulationConfig& cfg) {
    cfg.validate();
    PopulationParams pop = default_population(cfg.m, cfg.bounds_mult);
    const auto traces = generate_traces(pop, cfg);

    Scores total;
    if (cfg.eps == 0.0) {
        total = evaluate(traces, build_windows(pop, cfg.quantize), cfg.d_min_ms, cfg.d_max_ms);
    } else {
        // Calibration cohort drawn from the population itself; the release
        // mechanism then perturbs the windows the decision uses.
        auto rng = engine(cfg.seed, 2);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<std::vector<double>> cohort(cfg.cohort, std::vector<double>(cfg.m));
        for (auto& row : cohort)
            for (u32 j = 0; j < cfg.m; j++)
                row[j] = std::clamp(pop.mu_ms[j] + pop.sigma_ms[j] * gauss(rng), 0.0, 1000.0);
        std::vector<FeatureBounds> bounds(cfg.m);

        DPBudget budget{cfg.eps, cfg.delta, cfg.cohort};
        for (u32 r = 0; r < cfg.releases; r++) {
            u8 seed_bytes[16];
            for (int i = 0; i < 8; i++) seed_bytes[i] = static_cast<u8>(cfg.seed >> (8 * i));
            for (int i = 0; i < 8; i++) seed_bytes[8 + i] = static_cast<u8>((u64{r} + 1) >> (8 * i));
            PopulationParams released =
                release_population(cohort, bounds, budget, cfg.bounds_mult, seed_bytes);
            Scores s = evaluate(traces, build_windows(released, cfg.quantize), cfg.d_min_ms,
                                cfg.d_max_ms);
            total.tpr += s.tpr;
            total.tnr += s.tnr;
            total.cp_accept += s.cp_accept;
        }
        total.tpr /= cfg.releases;
        total.tnr /= cfg.releases;
        total.cp_accept /= cfg.releases;
    }

    SimulationRow row;
    row.label = label;
    row.adversary =
        cfg.adversary == AdversaryModel::naive_uniform ? "naive-uniform" : "distribution-matched";
    row.m = cfg.m;
    row.bounds_mult = cfg.bounds_mult;
    row.checkpoints = cfg.checkpoints;
    row.eps = cfg.eps;
    row.quantized = cfg.quantize;
    row.tpr = total.tpr;
    row.tnr = total.tnr;
    row.balanced_accuracy = (total.tpr + total.tnr) / 2.0;
    row.adversary_checkpoint_accept = total.cp_accept;
    return row;
}

std::string SimulationReport::csv() const {
    std::string out =
        "label,adversary,m,bounds_mult,checkpoints,eps,quantized,tpr,tnr,balanced_accuracy,"
        "adversary_checkpoint_accept\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%s,%s,%u,%u,%u,%g,%d,%.6f,%.6f,%.6f,%.6f\n",
                      r.label.c_str(), r.adversary.c_str(), r.m, r.bounds_mult, r.checkpoints,
                      r.eps, r.quantized ? 1 : 0, r.tpr, r.tnr, r.balanced_accuracy,
                      r.adversary_checkpoint_accept);
        out += buf;
    }
    return out;
}

std::string SimulationReport::table() const {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-16s %-20s %3s %4s %4s %7s %5s %8s %8s %8s %8s\n", "label",
                  "adversary", "m", "mult", "n", "eps", "quant", "tpr", "tnr", "balacc", "cp-acc");
    std::string out = buf;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%-16s %-20s %3u %4u %4u %7g %5s %8.4f %8.4f %8.4f %8.4f\n",
                      r.label.c_str(), r.adversary.c_str(), r.m, r.bounds_mult, r.checkpoints,
                      r.eps, r.quantized ? "yes" : "no", r.tpr, r.tnr, r.balanced_accuracy,
                      r.adversary_checkpoint_accept);
        out += buf;
    }
    return out;
}

const SimulationRow* SimulationReport::find(const std::string& label) const {
    for (const auto& r : rows)
        if (r.label == label) return &r;
    return nullptr;
}

SimulationReport standard_sweep(u64 seed) {
    SimulationReport rep;
    auto run = [&](const std::string& label, u64 group, auto&& tweak) {
        SimulationConfig c;
        c.seed = seed ^ (group * u64{0x9e3779b97f4a7c15});
        tweak(c);
        rep.rows.push_back(run_configuration(label, c));
    };

    // Privacy-budget comparison (same traces across the four rows).
    run("no-dp", 1, [](SimulationConfig&) {});
    run("eps-1.0", 1, [](SimulationConfig& c) { c.eps = 1.0; });
    run("eps-0.1", 1, [](SimulationConfig& c) { c.eps = 0.1; });
    run("no-dp-exact", 1, [](SimulationConfig& c) { c.quantize = false; });

    // Feature-count sweep, per-checkpoint (n=1) and session-level (n=20),
    // against both adversary models.
    for (u32 m : {6u, 12u, 24u}) {
        for (u32 n : {1u, 20u}) {
            const u64 group = 100 + 10 * m + n;
            char label[48];
            std::snprintf(label, sizeof label, "m-%u-n-%u-naive", m, n);
            run(label, group, [&](SimulationConfig& c) {
                c.m = m;
                c.checkpoints = n;
            });
            std::snprintf(label, sizeof label, "m-%u-n-%u-matched", m, n);
            run(label, group, [&](SimulationConfig& c) {
                c.m = m;
                c.checkpoints = n;
                c.adversary = AdversaryModel::distribution_matched;
            });
        }
    }

    // Window-width sweep against the naive adversary (same traces per n).
    for (u32 mult : {2u, 3u, 4u}) {
        for (u32 n : {1u, 20u}) {
            char label[48];
            std::snprintf(label, sizeof label, "w-%u-n-%u", mult, n);
            run(label, 200 + n, [&](SimulationConfig& c) {
                c.bounds_mult = mult;
                c.checkpoints = n;
            });
        }
    }
    return rep;
}

} // namespace zkpop
