// Acceptance suite: one line per criterion, PASS or FAIL, exit code equals
// the number of failed criteria.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include <armasin/armasin.hpp>

using namespace armasin;
namespace fs = std::filesystem;
constexpr double pi = std::numbers::pi;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s - criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", idx,
                name.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

FilterSpec hp_spec(double wp, double ws, double rs) {
    FilterSpec s;
    s.band = BandKind::highpass;
    s.passband_edges = {wp};
    s.stopband_edges = {ws};
    s.passband_ripple_db = 1.0;
    s.stopband_attenuation_db = rs;
    return s;
}

bool close_all(const std::vector<double>& got, const std::vector<double>& want,
               const std::vector<double>& tol) {
    if (got.size() != want.size()) return false;
    for (std::size_t i = 0; i < got.size(); ++i)
        if (std::abs(got[i] - want[i]) > tol[i]) return false;
    return true;
}

// 1. Filter-coefficient reproduction ----------------------------------------
void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream detail;

    const TransferFunction f1 = design_elliptic(hp_spec(0.25, 0.20, 10.0));
    const TransferFunction f2 = design_elliptic(hp_spec(0.26, 0.22, 10.0));
    FilterSpec s3;
    s3.band = BandKind::bandstop;
    s3.passband_edges = {0.158, 0.168};
    s3.stopband_edges = {0.160, 0.165};
    s3.passband_ripple_db = 1.0;
    s3.stopband_attenuation_db = 20.0;
    const TransferFunction f3 = design_elliptic(s3);

    ok = ok && close_all(f1.b, {0.6226, -1.5757, 1.5757, -0.6226},
                         std::vector<double>(4, 5e-3));
    ok = ok && close_all(f1.a, {1.0, -1.7101, 1.3712, -0.3152},
                         std::vector<double>(4, 5e-3));
    ok = ok && close_all(f2.b, {0.6113, -1.5243, 1.5243, -0.6113},
                         std::vector<double>(4, 5e-3));
    ok = ok && close_all(f2.a, {1.0, -1.6471, 1.3272, -0.2969},
                         std::vector<double>(4, 5e-3));
    ok = ok && close_all(f3.b,
                         {0.9713, -5.0804, 11.7716, -15.3086, 11.7716, -5.0804,
                          0.9713},
                         std::vector<double>(7, 5e-3));
    ok = ok && close_all(f3.a,
                         {1.0, -5.1801, 11.8864, -15.3078, 11.6563, -4.9815,
                          0.9430},
                         {5e-3, 5e-3, 5e-3, 2e-3, 5e-3, 5e-3, 5e-3});

    const double secs = seconds_since(t0);
    if (secs >= 1.0) {
        ok = false;
        detail << "runtime " << secs << "s";
    }
    report(1, "filter-coefficient reproduction", ok, detail.str());
}

// 2. Sinusoid estimation -----------------------------------------------------
void criterion2() {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<double> v(101);
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = std::sin(2.0 * (0.1 * static_cast<double>(i)));
    RegularizationPlan plan;
    plan.mode = RegularizationMode::direct;
    plan.predictable = PredictableForecast::sinusoids;
    const RegularizationResult r = regularize(Series(v, 0.1), plan);
    const SinusoidComponent c = r.components.at(0);

    const bool ok_a = std::abs(c.amplitude - 0.9721) <= 1e-3;
    const bool ok_w = std::abs(c.frequency - 0.2001) <= 1e-3;
    const bool ok_p = std::abs(c.phase - (-1.5440)) <= 1e-3;
    std::ostringstream detail;
    detail << "got (A, w, phi) = (" << c.amplitude << ", " << c.frequency << ", "
           << c.phase << ") vs (0.9721, 0.2001, -1.5440)";
    const double secs = seconds_since(t0);
    bool ok = ok_a && ok_w && ok_p && secs < 0.1;
    report(2, "sinusoid estimation", ok, detail.str());
}

// 3. Closed-form amplitude responses ----------------------------------------
void criterion3() {
    bool ok = true;
    auto grid_check = [&](const TransferFunction& tf, auto expect) {
        for (int i = 1; i < 256; ++i) {
            const double w = pi * i / 256.0;
            if (std::abs(std::abs(freq_response(tf, w)) - expect(w)) > 1e-9)
                ok = false;
        }
    };
    for (std::size_t d : {1u, 4u})
        grid_check(difference_operator(d), [d](double w) {
            return std::pow(std::sqrt(2.0 - 2.0 * std::cos(w)),
                            static_cast<double>(d));
        });
    grid_check(seasonal_difference(12), [](double w) {
        return std::sqrt(2.0 - 2.0 * std::cos(12.0 * w));
    });
    for (double alpha : {0.1, 0.5, 1.0})
        grid_check(ets(alpha), [alpha](double w) {
            const double b = 1.0 - alpha;
            return alpha / std::sqrt(1.0 + b * b - 2.0 * b * std::cos(w));
        });
    for (std::size_t n : {2u, 8u})
        grid_check(moving_average(n), [n](double w) {
            return std::abs(std::sin(w * n / 2.0) /
                            (static_cast<double>(n) * std::sin(w / 2.0)));
        });
    report(3, "closed-form amplitude responses", ok, "");
}

// 4. Zero-phase theorem ------------------------------------------------------
void criterion4() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t n = 2048, k0 = 64;
    const double w0 = 2.0 * pi * static_cast<double>(k0) / static_cast<double>(n);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::cos(w0 * static_cast<double>(i));
    const Series x(v);
    const TransferFunction tf = ets(0.5);
    const Series y = zero_phase_filter(tf, x);
    const Series y1 = apply(tf, x);

    auto peak_lag = [&](const Series& s) {
        int best_lag = 0;
        double best = -1e300;
        for (int lag = -16; lag <= 16; ++lag) {
            double acc = 0.0;
            for (std::size_t i = 400; i < n - 400; ++i)
                acc += s.values[i] *
                       x.values[static_cast<std::size_t>(static_cast<int>(i) - lag)];
            if (acc > best) {
                best = acc;
                best_lag = lag;
            }
        }
        return best_lag;
    };

    const double h2 = std::norm(freq_response(tf, w0));
    double amp = 0.0;
    for (std::size_t i = 400; i < n - 400; ++i)
        amp = std::max(amp, std::abs(y.values[i]));
    const int lag_expected =
        static_cast<int>(std::lround(-std::arg(freq_response(tf, w0)) / w0));

    bool ok = peak_lag(y) == 0;
    ok = ok && std::abs(amp - h2) <= 0.01 * h2;
    ok = ok && lag_expected != 0 && peak_lag(y1) == lag_expected;
    const double secs = seconds_since(t0);
    ok = ok && secs < 0.5;
    std::ostringstream detail;
    detail << "zero-phase lag " << peak_lag(y) << ", single-pass lag "
           << peak_lag(y1) << " (predicted " << lag_expected << ")";
    report(4, "zero-phase theorem", ok, detail.str());
}

// 5. Scenario Monte-Carlo ----------------------------------------------------
void criterion5() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream detail;
    for (const ScenarioConfig& cfg : builtin_scenarios()) {
        const BenchReport rep = run_scenario(cfg);
        const bool ordered = rep.armasin_mean < rep.baseline_mean;
        const bool needs_ratio = cfg.name != "case2";
        const bool ratio_ok = !needs_ratio || rep.ratio >= 2.0;
        if (!ordered || !ratio_ok) ok = false;
        detail << cfg.name << ": armasin=" << rep.armasin_mean
               << " baseline=" << rep.baseline_mean << " ratio=" << rep.ratio
               << (ordered ? "" : " [ordering violated]")
               << (ratio_ok ? "" : " [ratio < 2]") << "; ";
    }
    const double secs = seconds_since(t0);
    if (secs >= 300.0) {
        ok = false;
        detail << "runtime " << secs << "s";
    }
    report(5, "scenario Monte-Carlo (ordering + ratio bands)", ok, detail.str());
}

// 6. Property suites ---------------------------------------------------------
void criterion6() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream detail;

    // DFT: Parseval, roundtrip, conjugate symmetry
    {
        NoiseSource noise(123);
        std::vector<double> v(200);
        for (double& x : v) x = noise.normal();
        const Series x(v);
        const Spectrum s = dft(x);
        double te = 0.0, fe = 0.0;
        for (double w : x.values) te += w * w;
        for (const auto& b : s.bins) fe += std::norm(b);
        fe /= static_cast<double>(x.size());
        if (std::abs(te - fe) > 1e-9 * std::max(1.0, te)) {
            ok = false;
            detail << "Parseval; ";
        }
        const Series back = idft(s);
        for (std::size_t i = 0; i < x.size(); ++i)
            if (std::abs(back.values[i] - x.values[i]) > 1e-9) {
                ok = false;
                detail << "roundtrip; ";
                break;
            }
        for (std::size_t k = 1; k < x.size(); ++k)
            if (std::abs(s.bins[x.size() - k] - std::conj(s.bins[k])) > 1e-7) {
                ok = false;
                detail << "symmetry; ";
                break;
            }
        // sampling identity: DTFT at bin frequencies equals the DFT
        for (std::size_t k = 0; k < x.size(); ++k)
            if (std::abs(dtft_eval(x, s.bin_frequency(k)) - s.bins[k]) > 1e-7) {
                ok = false;
                detail << "sampling identity; ";
                break;
            }
    }

    // cascade multiplicativity
    {
        const TransferFunction h1({1.0, 0.4}, {1.0, -0.5});
        const TransferFunction h2({0.7, -0.1}, {1.0, 0.3});
        const TransferFunction h = cascade(h1, h2);
        for (int i = 0; i < 128; ++i) {
            const double w = pi * (i + 0.5) / 128.0;
            if (std::abs(freq_response(h, w) -
                         freq_response(h1, w) * freq_response(h2, w)) > 1e-9) {
                ok = false;
                detail << "cascade; ";
                break;
            }
        }
    }

    // stability agreement on 20 randomized filters
    {
        NoiseSource noise(314);
        for (int trial = 0; trial < 20; ++trial) {
            double r1 = 0.2 + 1.0 * noise.uniform();
            while (r1 > 0.93 && r1 < 1.07) r1 = 0.2 + 1.0 * noise.uniform();
            const double r2 = 0.2 + 0.75 * noise.uniform();
            const double th1 = pi * noise.uniform(), th2 = pi * noise.uniform();
            std::vector<double> a{1.0};
            auto mul_pair = [&](double r, double th) {
                a = convolve(a, {1.0, -2.0 * r * std::cos(th), r * r});
            };
            mul_pair(r1, th1);
            mul_pair(r2, th2);
            const TransferFunction tf({1.0}, a);
            const Series h = impulse_response(tf, 3000);
            double head = 0.0, tail = 0.0;
            for (std::size_t i = 0; i < 1500; ++i) head += std::abs(h.values[i]);
            for (std::size_t i = 1500; i < 3000; ++i) tail += std::abs(h.values[i]);
            const bool summable = tail < 1e-6 * std::max(1.0, head);
            if (stability(tf).stable != summable) {
                ok = false;
                detail << "stability agreement; ";
                break;
            }
        }
    }

    // ARMA fit consistency (AR(1), 100 seeded runs)
    {
        ArmaModel truth;
        truth.ar = {1.0, -0.5};
        std::size_t hits = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const Series x = simulate(truth, 10000, NoiseSource(42000 + seed));
            const ArmaModel m = fit(x, 1, 0);
            const double phi = -m.ar[1];
            if (phi >= 0.45 && phi <= 0.55) ++hits;
        }
        if (hits < 95) {
            ok = false;
            detail << "fit consistency " << hits << "/100; ";
        }
    }

    const double secs = seconds_since(t0);
    if (secs >= 60.0) {
        ok = false;
        detail << "runtime " << secs << "s";
    }
    report(6, "property suites", ok, detail.str());
}

// 7. Determinism of the bench CLI --------------------------------------------
void criterion7() {
    const std::string cli = ARMASIN_CLI_PATH;
    const fs::path dir =
        fs::temp_directory_path() / ("armasin_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };
    const std::string base = cli + " bench case1 --runs 20 --seed 12345 -o ";
    const int s1 = std::system((base + (dir / "a").string() + " >/dev/null").c_str());
    const int s2 = std::system((base + (dir / "b").string() + " >/dev/null").c_str());
    bool ok = WEXITSTATUS(s1) == 0 && WEXITSTATUS(s2) == 0;
    ok = ok && slurp(dir / "a.csv") == slurp(dir / "b.csv");
    fs::remove_all(dir);
    report(7, "bench determinism (byte-identical reports)", ok, "");
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    if (failures > 0)
        std::printf("%d criterion(s) failed\n", failures);
    else
        std::printf("all criteria passed\n");
    return failures;
}
