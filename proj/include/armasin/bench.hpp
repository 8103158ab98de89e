#ifndef ARMASIN_BENCH_HPP
#define ARMASIN_BENCH_HPP

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "armasin/arma.hpp"
#include "armasin/errors.hpp"
#include "armasin/pipeline.hpp"
#include "armasin/series.hpp"

namespace armasin {

enum class TrendKind { none, linear, chirp, sinusoid };

struct TrendConfig {
    TrendKind kind = TrendKind::none;
    double slope = 0.0;        // linear: slope * t
    double amplitude = 0.0;    // chirp / sinusoid
    double omega = 0.0;        // sinusoid: amplitude * sin(omega t)
    double chirp_c1 = 0.0;     // chirp: amplitude * sin((c1 t + c2) t)
    double chirp_c2 = 0.0;

    double eval(double t) const {
        switch (kind) {
            case TrendKind::none: return 0.0;
            case TrendKind::linear: return slope * t;
            case TrendKind::chirp:
                return amplitude * std::sin((chirp_c1 * t + chirp_c2) * t);
            case TrendKind::sinusoid:
                return amplitude * std::sin(omega * t);
        }
        return 0.0;
    }
};

/// Default ground-truth ARMA driving every scenario.
inline ArmaModel reference_arma() {
    ArmaModel m;
    m.ma = {13.0, 5.0, 6.0};
    m.ar = {40.0, 2.0, 3.0, 6.0, 9.0};
    const double a0 = m.ar[0];
    for (double& v : m.ar) v /= a0;
    for (double& v : m.ma) v /= a0;
    m.noise_variance = 1.0;
    return m;
}

struct ScenarioConfig {
    std::string name = "custom";
    double t_start = 0.0;
    double t_step = 1.0;
    double t_end = 1.0;
    ArmaModel ground_truth = reference_arma();
    TrendConfig trend;
    std::size_t mc_runs = 100;
    std::size_t holdout = 10;
    std::size_t horizon = 10;
    std::uint64_t base_seed = 12345;
    RegularizationPlan armasin_plan;
    std::size_t armasin_p = 4, armasin_q = 1;
    std::size_t baseline_d = 1;
    std::optional<std::size_t> baseline_L;
    std::size_t baseline_p = 4, baseline_q = 1;

    std::size_t sample_count() const {
        return static_cast<std::size_t>(
                   std::floor((t_end - t_start) / t_step + 1e-9)) + 1;
    }

    void validate() const {
        if (!(t_step > 0.0) || !(t_end > t_start))
            throw invalid_input("scenario: bad time grid");
        if (mc_runs < 1)
            throw invalid_input("scenario: mc_runs must be >= 1");
        if (holdout * 2 >= sample_count())
            throw invalid_input("scenario: holdout must be < half the samples");
        if (horizon < 1)
            throw invalid_input("scenario: horizon must be >= 1");
    }
};

struct RunRecord {
    std::size_t run = 0;
    std::uint64_t seed = 0;
    double armasin_mse = 0.0;
    double baseline_mse = 0.0;
    bool ok = true;
    std::string error;
};

struct BenchReport {
    std::string scenario;
    std::vector<RunRecord> runs;
    std::size_t failures = 0;
    double armasin_mean = 0.0, armasin_stderr = 0.0;
    double baseline_mean = 0.0, baseline_stderr = 0.0;
    double ratio = 0.0;  // baseline / armasin
    double seconds_per_run = 0.0;
};

/// One seeded Monte-Carlo campaign: per run, simulate, add trend, split off
/// the trailing holdout, forecast with both methods, score against the
/// realized values.
inline BenchReport run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    const std::size_t n = cfg.sample_count();
    const std::size_t h = cfg.horizon;

    BenchReport rep;
    rep.scenario = cfg.name;
    const auto t0 = std::chrono::steady_clock::now();

    for (std::size_t i = 0; i < cfg.mc_runs; ++i) {
        RunRecord rec;
        rec.run = i;
        rec.seed = cfg.base_seed + i;
        try {
            Series x = simulate(cfg.ground_truth, n, NoiseSource(rec.seed),
                                cfg.t_step);
            for (std::size_t k = 0; k < n; ++k)
                x.values[k] += cfg.trend.eval(cfg.t_start +
                                              cfg.t_step * static_cast<double>(k));
            Series train(std::vector<double>(x.values.begin(),
                                             x.values.end() -
                                                 static_cast<std::ptrdiff_t>(cfg.holdout)),
                         cfg.t_step);
            std::vector<double> held(x.values.end() -
                                         static_cast<std::ptrdiff_t>(cfg.holdout),
                                     x.values.end());

            const ForecastReport fa = arma_sin_forecast(
                train, cfg.armasin_plan, cfg.armasin_p, cfg.armasin_q, h);
            const ForecastReport fb = sarima_baseline_forecast(
                train, cfg.baseline_d, cfg.baseline_L, cfg.baseline_p,
                cfg.baseline_q, h);

            const std::size_t score_len = std::min(h, held.size());
            double s1 = 0.0, s2 = 0.0;
            for (std::size_t k = 0; k < score_len; ++k) {
                const double d1 = fa.combined.values[k] - held[k];
                const double d2 = fb.combined.values[k] - held[k];
                s1 += d1 * d1;
                s2 += d2 * d2;
            }
            rec.armasin_mse = s1 / static_cast<double>(score_len);
            rec.baseline_mse = s2 / static_cast<double>(score_len);
        } catch (const std::exception& e) {
            rec.ok = false;
            rec.error = e.what();
            ++rep.failures;
        }
        rep.runs.push_back(std::move(rec));
    }

    if (rep.failures * 5 > cfg.mc_runs)
        throw computation_error("run_scenario: more than 20% of runs failed (" +
                                std::to_string(rep.failures) + "/" +
                                std::to_string(cfg.mc_runs) + ")");

    const std::size_t ok = cfg.mc_runs - rep.failures;
    double m1 = 0.0, m2 = 0.0;
    for (const auto& r : rep.runs)
        if (r.ok) {
            m1 += r.armasin_mse;
            m2 += r.baseline_mse;
        }
    m1 /= static_cast<double>(ok);
    m2 /= static_cast<double>(ok);
    double v1 = 0.0, v2 = 0.0;
    for (const auto& r : rep.runs)
        if (r.ok) {
            v1 += (r.armasin_mse - m1) * (r.armasin_mse - m1);
            v2 += (r.baseline_mse - m2) * (r.baseline_mse - m2);
        }
    const double denom = (ok > 1) ? static_cast<double>(ok * (ok - 1)) : 1.0;
    rep.armasin_mean = m1;
    rep.baseline_mean = m2;
    rep.armasin_stderr = std::sqrt(v1 / denom);
    rep.baseline_stderr = std::sqrt(v2 / denom);
    rep.ratio = m2 / m1;
    rep.seconds_per_run =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() /
        static_cast<double>(cfg.mc_runs);
    return rep;
}

/// The four warming-up scenarios.
inline std::vector<ScenarioConfig> builtin_scenarios() {
    std::vector<ScenarioConfig> out;

    {
        ScenarioConfig c;
        c.name = "case1";
        c.t_start = 0.0; c.t_step = 0.5; c.t_end = 100.0;
        c.trend.kind = TrendKind::linear;
        c.trend.slope = 0.1;
        c.armasin_plan.mode = RegularizationMode::highpass;
        c.armasin_plan.highpass_spec.band = BandKind::highpass;
        c.armasin_plan.highpass_spec.passband_edges = {0.25};
        c.armasin_plan.highpass_spec.stopband_edges = {0.20};
        c.armasin_plan.highpass_spec.passband_ripple_db = 1.0;
        c.armasin_plan.highpass_spec.stopband_attenuation_db = 10.0;
        c.armasin_plan.predictable = PredictableForecast::polynomial;
        c.armasin_plan.polynomial_degree = 1;
        c.armasin_p = 4; c.armasin_q = 1;
        c.baseline_d = 1;
        c.baseline_p = 4; c.baseline_q = 2;
        out.push_back(c);
    }
    {
        ScenarioConfig c;
        c.name = "case2";
        c.t_start = 0.0; c.t_step = 0.1; c.t_end = 100.0;
        c.trend.kind = TrendKind::chirp;
        c.trend.amplitude = 0.25;
        c.trend.chirp_c1 = 0.01;
        c.trend.chirp_c2 = 0.1;
        c.armasin_plan.mode = RegularizationMode::highpass;
        c.armasin_plan.highpass_spec.band = BandKind::highpass;
        c.armasin_plan.highpass_spec.passband_edges = {0.26};
        c.armasin_plan.highpass_spec.stopband_edges = {0.22};
        c.armasin_plan.highpass_spec.passband_ripple_db = 1.0;
        c.armasin_plan.highpass_spec.stopband_attenuation_db = 10.0;
        c.armasin_plan.predictable = PredictableForecast::sinusoids;
        c.armasin_plan.fit_window_fraction = 0.25;
        c.armasin_p = 5; c.armasin_q = 2;
        c.baseline_d = 1;
        c.baseline_p = 4; c.baseline_q = 1;
        out.push_back(c);
    }
    {
        ScenarioConfig c;
        c.name = "case3";
        c.t_start = 0.0; c.t_step = 0.1; c.t_end = 50.0;
        c.trend.kind = TrendKind::sinusoid;
        c.trend.amplitude = 1.0;
        c.trend.omega = 5.0;
        c.armasin_plan.mode = RegularizationMode::bandstop;
        FilterSpec bs;
        bs.band = BandKind::bandstop;
        bs.passband_edges = {0.158, 0.168};
        bs.stopband_edges = {0.160, 0.165};
        bs.passband_ripple_db = 1.0;
        bs.stopband_attenuation_db = 20.0;
        c.armasin_plan.bandstop_specs = {bs};
        c.armasin_plan.predictable = PredictableForecast::sinusoids;
        c.armasin_p = 4; c.armasin_q = 1;
        c.baseline_d = 1;
        c.baseline_L = 12;
        c.baseline_p = 4; c.baseline_q = 1;
        out.push_back(c);
    }
    {
        ScenarioConfig c;
        c.name = "case4";
        c.t_start = 0.0; c.t_step = 0.1; c.t_end = 10.0;
        c.trend.kind = TrendKind::sinusoid;
        c.trend.amplitude = 1.0;
        c.trend.omega = 2.0;
        c.armasin_plan.mode = RegularizationMode::direct;
        c.armasin_plan.predictable = PredictableForecast::sinusoids;
        c.armasin_plan.sinusoid_count = 1;
        c.armasin_p = 4; c.armasin_q = 1;
        c.baseline_d = 0;
        c.baseline_L = 31;
        c.baseline_p = 4; c.baseline_q = 1;
        out.push_back(c);
    }
    return out;
}

/// Pure-ARMA control: no trend, passthrough plan, identical fit orders.
inline ScenarioConfig control_scenario() {
    ScenarioConfig c;
    c.name = "control";
    c.t_start = 0.0; c.t_step = 0.5; c.t_end = 100.0;
    c.trend.kind = TrendKind::none;
    c.armasin_plan.mode = RegularizationMode::automatic;
    c.armasin_plan.predictable = PredictableForecast::none;
    c.armasin_p = 4; c.armasin_q = 1;
    c.baseline_d = 0;
    c.baseline_p = 4; c.baseline_q = 1;
    return c;
}

} // namespace armasin

#endif
