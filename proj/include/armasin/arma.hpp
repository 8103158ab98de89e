#ifndef ARMASIN_ARMA_HPP
#define ARMASIN_ARMA_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "armasin/errors.hpp"
#include "armasin/series.hpp"
#include "armasin/transfer_function.hpp"

namespace armasin {

/// ARMA(p, q):  ar(z) x(n) = ma(z) eps(n),  eps ~ N(0, noise_variance).
/// `ar` is the full a0-normalized denominator (leading 1, length p+1),
/// `ma` the numerator (length q+1). `mean` is added on top of the
/// zero-mean recursion. `projected` reports whether fitting had to reflect
/// roots inside the unit circle.
struct ArmaModel {
    std::vector<double> ar{1.0};
    std::vector<double> ma{1.0};
    double noise_variance = 1.0;
    double mean = 0.0;
    bool projected = false;

    std::size_t p() const { return ar.size() - 1; }
    std::size_t q() const { return ma.size() - 1; }

    TransferFunction transfer() const { return TransferFunction(ma, ar); }

    void validate() const {
        if (ar.empty() || ma.empty())
            throw invalid_input("ArmaModel: ar and ma must be nonempty");
        if (!(noise_variance > 0.0))
            throw invalid_input("ArmaModel: noise_variance must be positive");
    }
};

/// Deterministic cross-platform noise stream: mt19937_64 driven, uniforms by
/// taking the top 53 bits, normals by the Marsaglia polar method.
class NoiseSource {
public:
    explicit NoiseSource(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t seed() const { return seed_; }

    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

inline Series simulate(const ArmaModel& model, std::size_t n, NoiseSource noise,
                       double sampling_period = 1.0) {
    model.validate();
    if (n < 1)
        throw invalid_input("simulate: n must be >= 1");
    const StabilityReport rep = stability(model.transfer());
    if (!rep.stable) {
        std::string msg = "simulate: non-stationary model; pole moduli:";
        for (double m : rep.pole_moduli) msg += " " + std::to_string(m);
        throw invalid_input(msg);
    }
    const double sd = std::sqrt(model.noise_variance);
    std::vector<double> eps(n);
    for (double& e : eps) e = sd * noise.normal();
    Series out = apply(model.transfer(), Series(std::move(eps), sampling_period));
    if (model.mean != 0.0)
        for (double& v : out.values) v += model.mean;
    return out;
}

namespace detail {

/// Least-squares solve of the column system; throws on rank deficiency.
inline Eigen::VectorXd solve_ls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < X.cols())
        throw fit_failure("least squares: collinear regressors");
    return qr.solve(y);
}

/// Reflect any root of 1 + c1 z^-1 + ... + cm z^-m with modulus >= 1-1e-6
/// back inside the circle; returns true if anything moved.
inline bool project_roots_inside(std::vector<double>& c) {
    if (c.empty()) return false;
    constexpr double lim = 1.0 - 1e-6;
    std::vector<double> full(c.size() + 1);
    full[0] = 1.0;
    std::copy(c.begin(), c.end(), full.begin() + 1);
    auto roots = polynomial_roots(full);
    bool moved = false;
    for (auto& r : roots) {
        const double m = std::abs(r);
        if (m >= lim) {
            r *= (lim * lim) / (m * m);
            moved = true;
        }
    }
    if (!moved) return false;
    // rebuild monic coefficients from the adjusted roots
    std::vector<std::complex<double>> poly{1.0};
    for (const auto& r : roots) {
        poly.push_back(0.0);
        for (std::size_t i = poly.size() - 1; i > 0; --i) poly[i] -= r * poly[i - 1];
    }
    // original degree may exceed roots.size() when trailing coefficients were 0
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = (i + 1 < poly.size()) ? poly[i + 1].real() : 0.0;
    return true;
}

} // namespace detail

/// Hannan-Rissanen least-squares estimation:
///   1. long autoregression (order min(20, n/10)) for innovation proxies,
///   2. regression of x on its own lags and the innovation lags,
///   3. one refinement pass with innovations recomputed from the stage-2
///      model.
/// AR roots are projected inside the unit circle for stationarity; MA roots
/// likewise for invertibility (reported via `projected`).
inline ArmaModel fit(const Series& x, std::size_t p, std::size_t q) {
    x.validate();
    const std::size_t n = x.size();
    if (n <= 10 * (p + q + 1))
        throw invalid_input("fit: need len(x) > 10*(p+q+1)");

    const double mu = x.mean();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = x.values[i] - mu;

    ArmaModel model;
    model.mean = mu;
    if (p == 0 && q == 0) {
        double ss = 0.0;
        for (double v : y) ss += v * v;
        model.noise_variance = std::max(ss / static_cast<double>(n), 1e-300);
        return model;
    }

    const std::size_t m = std::min<std::size_t>(20, n / 10);

    // stage 1: long-AR innovation proxies
    std::vector<double> e(n, 0.0);
    {
        const std::size_t rows = n - m;
        Eigen::MatrixXd X(rows, m);
        Eigen::VectorXd rhs(rows);
        for (std::size_t t = m; t < n; ++t) {
            for (std::size_t i = 0; i < m; ++i)
                X(static_cast<Eigen::Index>(t - m), static_cast<Eigen::Index>(i)) =
                    y[t - 1 - i];
            rhs(static_cast<Eigen::Index>(t - m)) = y[t];
        }
        const Eigen::VectorXd coef = detail::solve_ls(X, rhs);
        for (std::size_t t = m; t < n; ++t) {
            double pred = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                pred += coef(static_cast<Eigen::Index>(i)) * y[t - 1 - i];
            e[t] = y[t] - pred;
        }
    }

    // stage 2 regression, reused by the refinement pass
    std::vector<double> phi(p, 0.0), theta(q, 0.0);
    double sigma2 = 0.0;
    auto stage2 = [&](const std::vector<double>& inn) {
        const std::size_t t0 = std::max(m, std::max(p, q));
        if (t0 >= n)
            throw fit_failure("fit: too few usable rows");
        const std::size_t rows = n - t0;
        const std::size_t cols = p + q;
        Eigen::MatrixXd X(rows, cols);
        Eigen::VectorXd rhs(rows);
        for (std::size_t t = t0; t < n; ++t) {
            const auto r = static_cast<Eigen::Index>(t - t0);
            for (std::size_t i = 0; i < p; ++i)
                X(r, static_cast<Eigen::Index>(i)) = y[t - 1 - i];
            for (std::size_t j = 0; j < q; ++j)
                X(r, static_cast<Eigen::Index>(p + j)) = inn[t - 1 - j];
            rhs(r) = y[t];
        }
        const Eigen::VectorXd coef = detail::solve_ls(X, rhs);
        for (std::size_t i = 0; i < p; ++i)
            phi[i] = coef(static_cast<Eigen::Index>(i));
        for (std::size_t j = 0; j < q; ++j)
            theta[j] = coef(static_cast<Eigen::Index>(p + j));
        const Eigen::VectorXd res = rhs - X * coef;
        sigma2 = res.squaredNorm() / static_cast<double>(rows);
    };

    auto project = [&]() {
        // z-transform convention: a = 1 - phi1 z^-1 - ..., b = 1 + th1 z^-1 + ...
        std::vector<double> ac(p), bc(q);
        for (std::size_t i = 0; i < p; ++i) ac[i] = -phi[i];
        for (std::size_t j = 0; j < q; ++j) bc[j] = theta[j];
        const bool moved_a = detail::project_roots_inside(ac);
        const bool moved_b = detail::project_roots_inside(bc);
        if (moved_a)
            for (std::size_t i = 0; i < p; ++i) phi[i] = -ac[i];
        if (moved_b)
            for (std::size_t j = 0; j < q; ++j) theta[j] = bc[j];
        model.projected = model.projected || moved_a || moved_b;
    };

    stage2(e);
    project();

    // stage 3: innovations from the stage-2 model (inverse filtering), refit
    std::vector<double> e2(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        double pred = 0.0;
        for (std::size_t i = 0; i < p && i < t; ++i) pred += phi[i] * y[t - 1 - i];
        for (std::size_t j = 0; j < q && j < t; ++j) pred += theta[j] * e2[t - 1 - j];
        e2[t] = y[t] - pred;
    }
    stage2(e2);
    project();

    model.ar.assign(p + 1, 0.0);
    model.ar[0] = 1.0;
    for (std::size_t i = 0; i < p; ++i) model.ar[i + 1] = -phi[i];
    model.ma.assign(q + 1, 0.0);
    model.ma[0] = 1.0;
    for (std::size_t j = 0; j < q; ++j) model.ma[j + 1] = theta[j];
    model.noise_variance = std::max(sigma2, 1e-300);
    return model;
}

struct OrderSelection {
    std::size_t p = 0;
    std::size_t q = 0;
    double aic = 0.0;
    std::size_t cells_failed = 0;
};

/// AIC = n ln(sigma^2) + 2 (p+q+1) over the grid; ties break toward smaller
/// p+q, then smaller p.
inline OrderSelection select_order(const Series& x, std::size_t p_max,
                                   std::size_t q_max) {
    if (p_max > 8 || q_max > 8)
        throw invalid_input("select_order: p_max and q_max must be <= 8");
    const double n = static_cast<double>(x.size());
    OrderSelection best;
    bool found = false;
    std::size_t failed = 0;
    for (std::size_t p = 0; p <= p_max; ++p) {
        for (std::size_t q = 0; q <= q_max; ++q) {
            double aic;
            try {
                const ArmaModel m = fit(x, p, q);
                aic = n * std::log(m.noise_variance) +
                      2.0 * static_cast<double>(p + q + 1);
            } catch (const computation_error&) {
                ++failed;
                continue;
            } catch (const invalid_input&) {
                ++failed;
                continue;
            }
            const bool better =
                !found || aic < best.aic - 1e-12 ||
                (std::abs(aic - best.aic) <= 1e-12 &&
                 (p + q < best.p + best.q ||
                  (p + q == best.p + best.q && p < best.p)));
            if (better) {
                best.p = p;
                best.q = q;
                best.aic = aic;
                found = true;
            }
        }
    }
    if (!found)
        throw fit_failure("select_order: every grid cell failed");
    best.cells_failed = failed;
    return best;
}

/// Minimum-MSE linear prediction under the model: innovations reconstructed
/// over the history with zero initial conditions, future innovations zero.
inline Series forecast(const ArmaModel& model, const Series& history,
                       std::size_t horizon) {
    model.validate();
    if (horizon < 1)
        throw invalid_input("forecast: horizon must be >= 1");
    if (history.values.empty() && (model.p() > 0 || model.q() > 0))
        throw invalid_input("forecast: empty history for a model with memory");

    const std::size_t n = history.size();
    const std::size_t p = model.p(), q = model.q();
    const double b0 = model.ma[0];
    std::vector<double> y(n + horizon, 0.0), e(n + horizon, 0.0);
    for (std::size_t i = 0; i < n; ++i) y[i] = history.values[i] - model.mean;
    for (std::size_t t = 0; t < n; ++t) {
        double pred = 0.0;
        for (std::size_t i = 1; i <= p && i <= t; ++i)
            pred -= model.ar[i] * y[t - i];
        for (std::size_t j = 1; j <= q && j <= t; ++j)
            pred += model.ma[j] * e[t - j];
        e[t] = (y[t] - pred) / b0;
    }
    for (std::size_t t = n; t < n + horizon; ++t) {
        double v = 0.0;
        for (std::size_t i = 1; i <= p && i <= t; ++i) v -= model.ar[i] * y[t - i];
        for (std::size_t j = 1; j <= q && j <= t; ++j) v += model.ma[j] * e[t - j];
        y[t] = v;
    }
    std::vector<double> out(horizon);
    for (std::size_t i = 0; i < horizon; ++i) out[i] = y[n + i] + model.mean;
    return Series(std::move(out), history.values.empty() ? 1.0 : history.sampling_period);
}

} // namespace armasin

#endif
