#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <armasin/arma.hpp>
#include <armasin/spectrum.hpp>

using namespace armasin;
constexpr double pi = std::numbers::pi;

namespace {

ArmaModel paper_model() {
    ArmaModel m;
    m.ar = {40.0, 2.0, 3.0, 6.0, 9.0};
    m.ma = {13.0, 5.0, 6.0};
    const double a0 = m.ar[0];
    for (double& v : m.ar) v /= a0;
    for (double& v : m.ma) v /= a0;
    return m;
}

ArmaModel ar1(double phi) {
    ArmaModel m;
    m.ar = {1.0, -phi};
    m.ma = {1.0};
    return m;
}

double spectral_l2_distance(const ArmaModel& a, const ArmaModel& b) {
    std::vector<double> sa, sb;
    for (int i = 0; i < 512; ++i) {
        const double w = pi * (i + 0.5) / 512.0;
        sa.push_back(std::norm(freq_response(a.transfer(), w)) * a.noise_variance);
        sb.push_back(std::norm(freq_response(b.transfer(), w)) * b.noise_variance);
    }
    double na = 0.0, nb = 0.0;
    for (double v : sa) na += v * v;
    for (double v : sb) nb += v * v;
    na = std::sqrt(na);
    nb = std::sqrt(nb);
    double d = 0.0;
    for (std::size_t i = 0; i < sa.size(); ++i) {
        const double diff = sa[i] / na - sb[i] / nb;
        d += diff * diff;
    }
    return std::sqrt(d);
}

} // namespace

TEST_CASE("noise source is deterministic and seed-sensitive") {
    NoiseSource a(99), b(99), c(100);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 64; ++i) {
        const double va = a.normal();
        all_equal = all_equal && va == b.normal();
        any_diff = any_diff || va != c.normal();
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("simulate with trivial model returns the raw noise sequence") {
    ArmaModel white;
    const Series x = simulate(white, 32, NoiseSource(7));
    NoiseSource noise(7);
    for (double v : x.values) CHECK(v == noise.normal());
}

TEST_CASE("simulate is bit-identical for identical seeds") {
    const ArmaModel m = paper_model();
    const Series a = simulate(m, 500, NoiseSource(4321));
    const Series b = simulate(m, 500, NoiseSource(4321));
    CHECK(a.values == b.values);
}

TEST_CASE("simulate rejects non-stationary models") {
    ArmaModel bad;
    bad.ar = {1.0, -1.5};
    CHECK_THROWS_AS(simulate(bad, 10, NoiseSource(1)), invalid_input);
}

TEST_CASE("AR(1) stationary variance") {
    const Series x = simulate(ar1(0.5), 100000, NoiseSource(2024));
    double mean = x.mean(), var = 0.0;
    for (double v : x.values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(x.size());
    CHECK(var == doctest::Approx(1.0 / 0.75).epsilon(0.05));
}

TEST_CASE("averaged periodogram matches the model spectral density in shape") {
    const ArmaModel m = paper_model();
    const std::size_t n = 256, runs = 200;
    std::vector<double> avg(n / 2, 0.0);
    for (std::size_t r = 0; r < runs; ++r) {
        const Series x = simulate(m, n, NoiseSource(5000 + r));
        const Spectrum s = dft(x);
        for (std::size_t k = 0; k < n / 2; ++k)
            avg[k] += std::norm(s.bins[k + 1]) / static_cast<double>(n);
    }
    std::vector<double> truth(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double w = 2.0 * pi * static_cast<double>(k + 1) / static_cast<double>(n);
        truth[k] = std::norm(freq_response(m.transfer(), w)) * m.noise_variance;
    }
    double na = 0.0, nt = 0.0;
    for (std::size_t k = 0; k < n / 2; ++k) {
        na += avg[k] * avg[k];
        nt += truth[k] * truth[k];
    }
    na = std::sqrt(na);
    nt = std::sqrt(nt);
    double dist = 0.0;
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double d = avg[k] / na - truth[k] / nt;
        dist += d * d;
    }
    CHECK(std::sqrt(dist) < 0.1);
}

TEST_CASE("white-noise fit recovers the sample variance") {
    const Series x = simulate(ArmaModel{}, 2000, NoiseSource(66));
    const ArmaModel m = fit(x, 0, 0);
    double mean = x.mean(), var = 0.0;
    for (double v : x.values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(x.size());
    CHECK(m.noise_variance == doctest::Approx(var).epsilon(1e-9));
    CHECK(m.mean == doctest::Approx(mean));
}

TEST_CASE("fit contracts") {
    const Series x = simulate(ArmaModel{}, 50, NoiseSource(3));
    CHECK_THROWS_AS(fit(x, 4, 4), invalid_input);  // needs > 10 (p+q+1)
}

TEST_CASE("AR(1) estimation consistency over 100 seeded runs") {
    std::size_t hits = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Series x = simulate(ar1(0.5), 10000, NoiseSource(42000 + seed));
        const ArmaModel m = fit(x, 1, 0);
        const double phi_hat = -m.ar[1];
        if (phi_hat >= 0.45 && phi_hat <= 0.55) ++hits;
    }
    CHECK(hits >= 95);
}

TEST_CASE("fitted spectral density close to the generating model") {
    const ArmaModel truth = paper_model();
    const Series x = simulate(truth, 10000, NoiseSource(818));
    const ArmaModel m = fit(x, 4, 2);
    CHECK(spectral_l2_distance(truth, m) < 0.15);
}

TEST_CASE("fit round trip improves with sample size") {
    std::vector<ArmaModel> models{ar1(0.5), ar1(-0.7), paper_model()};
    {
        ArmaModel ma1;
        ma1.ma = {1.0, 0.4};
        models.push_back(ma1);
        ArmaModel arma11;
        arma11.ar = {1.0, -0.6};
        arma11.ma = {1.0, 0.3};
        models.push_back(arma11);
    }
    for (const ArmaModel& truth : models) {
        std::vector<double> med_err;
        for (std::size_t n : {1000u, 10000u, 100000u}) {
            std::vector<double> errs;
            for (std::uint64_t seed = 0; seed < 50; ++seed) {
                const Series x = simulate(truth, n, NoiseSource(100 * n + seed));
                const ArmaModel m = fit(x, truth.p(), truth.q());
                double e = 0.0;
                for (std::size_t i = 1; i < truth.ar.size(); ++i)
                    e = std::max(e, std::abs(m.ar[i] - truth.ar[i]));
                for (std::size_t j = 1; j < truth.ma.size(); ++j)
                    e = std::max(e, std::abs(m.ma[j] - truth.ma[j] / truth.ma[0]));
                errs.push_back(e);
            }
            std::sort(errs.begin(), errs.end());
            med_err.push_back(errs[errs.size() / 2]);
        }
        CHECK(med_err[1] <= med_err[0]);
        CHECK(med_err[2] <= med_err[1]);
    }
}

TEST_CASE("fitted AR part always passes stability") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Series x = simulate(paper_model(), 400, NoiseSource(31000 + seed));
        const ArmaModel m = fit(x, 4, 2);
        CHECK(stability(TransferFunction({1.0}, m.ar)).stable);
    }
}

TEST_CASE("order selection: (0,0) is the modal choice on white noise") {
    // AIC overfits with fixed probability per extra cell, so a strict
    // majority is the right expectation here, not near-certainty
    std::size_t hits = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Series x = simulate(ArmaModel{}, 600, NoiseSource(7000 + seed));
        const OrderSelection sel = select_order(x, 2, 2);
        if (sel.p == 0 && sel.q == 0) ++hits;
    }
    CHECK(hits >= 50);
}

TEST_CASE("order selection: AR(2) is the modal choice") {
    ArmaModel truth;
    truth.ar = {1.0, -0.75, 0.5};
    std::size_t hits = 0;
    const std::size_t runs = 40;
    for (std::uint64_t seed = 0; seed < runs; ++seed) {
        const Series x = simulate(truth, 10000, NoiseSource(8200 + seed));
        const OrderSelection sel = select_order(x, 3, 1);
        if (sel.p == 2 && sel.q == 0) ++hits;
    }
    CHECK(hits > runs / 2);
}

TEST_CASE("order selection contracts") {
    const Series x = simulate(ArmaModel{}, 200, NoiseSource(1));
    const OrderSelection sel = select_order(x, 0, 0);
    CHECK(sel.p == 0);
    CHECK(sel.q == 0);
    CHECK_THROWS_AS(select_order(x, 9, 0), invalid_input);
}

TEST_CASE("forecast closed forms") {
    // ARMA(0,0): mean forecast at every horizon
    ArmaModel white;
    white.mean = 0.0;
    const Series hist = simulate(white, 50, NoiseSource(12));
    const Series f0 = forecast(white, hist, 5);
    for (double v : f0.values) CHECK(v == doctest::Approx(0.0));

    // AR(1): phi^h * y_t
    const ArmaModel m1 = ar1(0.6);
    const Series h1 = simulate(m1, 200, NoiseSource(13));
    const Series f1 = forecast(m1, h1, 4);
    const double last = h1.values.back();
    for (std::size_t h = 0; h < 4; ++h)
        CHECK(f1.values[h] ==
              doctest::Approx(std::pow(0.6, static_cast<double>(h + 1)) * last)
                  .epsilon(1e-10));

    // MA(1): zero beyond one step
    ArmaModel mq;
    mq.ma = {1.0, 0.5};
    const Series h2 = simulate(mq, 200, NoiseSource(14));
    const Series f2 = forecast(mq, h2, 3);
    CHECK(f2.values[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(f2.values[2] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("forecast contracts") {
    const ArmaModel m1 = ar1(0.5);
    CHECK_THROWS_AS(forecast(m1, Series(), 3), invalid_input);
    const Series h = simulate(m1, 50, NoiseSource(2));
    CHECK_THROWS_AS(forecast(m1, h, 0), invalid_input);
}

TEST_CASE("one-step forecast MSE near the theoretical floor") {
    const ArmaModel truth = ar1(0.7);
    const std::size_t n = 10000, eval = 400;
    const Series x = simulate(truth, n + eval, NoiseSource(2718));
    const Series train(std::vector<double>(x.values.begin(), x.values.begin() + n));
    const ArmaModel m = fit(train, 1, 0);
    double mse = 0.0;
    for (std::size_t i = 0; i < eval; ++i) {
        const Series hist(
            std::vector<double>(x.values.begin(), x.values.begin() + n + i));
        const Series f = forecast(m, hist, 1);
        const double err = f.values[0] - x.values[n + i];
        mse += err * err;
    }
    mse /= static_cast<double>(eval);
    CHECK(mse <= 1.1 * truth.noise_variance);
}
