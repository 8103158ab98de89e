#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include <armasin/bench.hpp>
#include <armasin/io.hpp>

using namespace armasin;

TEST_CASE("builtin scenarios match the published setups") {
    const auto scenarios = builtin_scenarios();
    REQUIRE(scenarios.size() == 4);
    CHECK(scenarios[0].name == "case1");
    CHECK(scenarios[0].sample_count() == 201);
    CHECK(scenarios[0].trend.kind == TrendKind::linear);
    CHECK(scenarios[0].baseline_d == 1);
    CHECK(scenarios[1].sample_count() == 1001);
    CHECK(scenarios[1].trend.kind == TrendKind::chirp);
    CHECK(scenarios[2].sample_count() == 501);
    CHECK(scenarios[2].baseline_L.has_value());
    CHECK(*scenarios[2].baseline_L == 12);
    CHECK(scenarios[3].sample_count() == 101);
    CHECK(scenarios[3].armasin_plan.mode == RegularizationMode::direct);
    CHECK(scenarios[3].baseline_d == 0);
    CHECK(*scenarios[3].baseline_L == 31);
    for (const auto& s : scenarios) {
        CHECK(s.mc_runs == 100);
        CHECK(s.holdout == 10);
        CHECK(s.horizon == 10);
        CHECK_NOTHROW(s.validate());
    }
}

TEST_CASE("config validation") {
    ScenarioConfig bad = builtin_scenarios()[0];
    bad.mc_runs = 0;
    CHECK_THROWS_AS(bad.validate(), invalid_input);
    bad = builtin_scenarios()[0];
    bad.holdout = 150;
    CHECK_THROWS_AS(bad.validate(), invalid_input);
    bad = builtin_scenarios()[0];
    bad.t_step = -1.0;
    CHECK_THROWS_AS(bad.validate(), invalid_input);
}

TEST_CASE("reports are bit-identical for identical configs") {
    ScenarioConfig cfg = builtin_scenarios()[0];
    cfg.mc_runs = 5;
    const BenchReport a = run_scenario(cfg);
    const BenchReport b = run_scenario(cfg);
    REQUIRE(a.runs.size() == b.runs.size());
    for (std::size_t i = 0; i < a.runs.size(); ++i) {
        CHECK(a.runs[i].armasin_mse == b.runs[i].armasin_mse);
        CHECK(a.runs[i].baseline_mse == b.runs[i].baseline_mse);
    }
    CHECK(a.armasin_mean == b.armasin_mean);
    std::ostringstream csva, csvb;
    io::write_bench_csv(csva, a);
    io::write_bench_csv(csvb, b);
    CHECK(csva.str() == csvb.str());
}

TEST_CASE("mean MSE equals the arithmetic mean of per-run MSEs") {
    ScenarioConfig cfg = builtin_scenarios()[2];
    cfg.mc_runs = 8;
    const BenchReport rep = run_scenario(cfg);
    double m = 0.0;
    for (const auto& r : rep.runs) m += r.armasin_mse;
    m /= static_cast<double>(rep.runs.size() - rep.failures);
    CHECK(rep.armasin_mean == doctest::Approx(m).epsilon(1e-12));
}

TEST_CASE("seed independence: different bases agree within 3 standard errors") {
    ScenarioConfig a = builtin_scenarios()[0];
    a.mc_runs = 40;
    ScenarioConfig b = a;
    b.base_seed = a.base_seed + 1000000;
    const BenchReport ra = run_scenario(a);
    const BenchReport rb = run_scenario(b);
    bool any_diff = false;
    for (std::size_t i = 0; i < ra.runs.size(); ++i)
        any_diff = any_diff || ra.runs[i].armasin_mse != rb.runs[i].armasin_mse;
    CHECK(any_diff);
    const double se = std::sqrt(ra.armasin_stderr * ra.armasin_stderr +
                                rb.armasin_stderr * rb.armasin_stderr);
    CHECK(std::abs(ra.armasin_mean - rb.armasin_mean) <= 3.0 * se);
}

TEST_CASE("ordering holds in every builtin scenario") {
    for (ScenarioConfig cfg : builtin_scenarios()) {
        cfg.mc_runs = 30;
        const BenchReport rep = run_scenario(cfg);
        CHECK(rep.armasin_mean < rep.baseline_mean);
    }
}

TEST_CASE("control scenario: methods statistically equivalent on pure ARMA data") {
    ScenarioConfig cfg = control_scenario();
    cfg.mc_runs = 20;
    const BenchReport rep = run_scenario(cfg);
    CHECK(std::abs(rep.ratio - 1.0) < 0.25);
}
