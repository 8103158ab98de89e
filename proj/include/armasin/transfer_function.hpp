#ifndef ARMASIN_TRANSFER_FUNCTION_HPP
#define ARMASIN_TRANSFER_FUNCTION_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "armasin/errors.hpp"
#include "armasin/series.hpp"

namespace armasin {

/// Rational LTI system in z^-1:
///   H(z) = (b0 + b1 z^-1 + ... + bq z^-q) / (a0 + a1 z^-1 + ... + ap z^-p)
/// Construction normalizes a0 to 1.
struct TransferFunction {
    std::vector<double> b;  // numerator, acts on the input
    std::vector<double> a;  // denominator, acts on the output; a[0] == 1

    TransferFunction() : b{1.0}, a{1.0} {}
    TransferFunction(std::vector<double> num, std::vector<double> den)
        : b(std::move(num)), a(std::move(den)) {
        if (a.empty() || a[0] == 0.0)
            throw invalid_input("TransferFunction: a0 must be nonzero");
        bool any = false;
        for (double v : b) any = any || v != 0.0;
        if (!any)
            throw invalid_input("TransferFunction: numerator must be nonzero");
        const double a0 = a[0];
        for (double& v : a) v /= a0;
        for (double& v : b) v /= a0;
    }

    static TransferFunction identity() { return TransferFunction({1.0}, {1.0}); }
    bool is_fir() const {
        return std::all_of(a.begin() + 1, a.end(), [](double v) { return v == 0.0; });
    }
};

/// Run the difference equation with zero initial conditions
/// (x_k := 0, y_k := 0 for k < 0).
inline Series apply(const TransferFunction& tf, const Series& x) {
    const std::size_t n = x.size();
    std::vector<double> y(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < tf.b.size() && j <= k; ++j)
            acc += tf.b[j] * x.values[k - j];
        for (std::size_t i = 1; i < tf.a.size() && i <= k; ++i)
            acc -= tf.a[i] * y[k - i];
        y[k] = acc;
    }
    return Series(std::move(y), x.sampling_period);
}

inline Series impulse_response(const TransferFunction& tf, std::size_t length) {
    if (length < 1)
        throw invalid_input("impulse_response: length must be >= 1");
    std::vector<double> imp(length, 0.0);
    imp[0] = 1.0;
    return apply(tf, Series(std::move(imp)));
}

/// H(e^{jw}).
inline std::complex<double> freq_response(const TransferFunction& tf, double w) {
    const std::complex<double> zinv(std::cos(-w), std::sin(-w));
    std::complex<double> num(0.0), den(0.0), p(1.0);
    const std::size_t top = std::max(tf.b.size(), tf.a.size());
    for (std::size_t i = 0; i < top; ++i) {
        if (i < tf.b.size()) num += tf.b[i] * p;
        if (i < tf.a.size()) den += tf.a[i] * p;
        p *= zinv;
    }
    if (std::abs(den) < 1e-14 * std::max(1.0, std::abs(num)))
        throw pole_on_circle(w);
    return num / den;
}

inline std::vector<double> convolve(const std::vector<double>& u,
                                    const std::vector<double>& v) {
    std::vector<double> out(u.size() + v.size() - 1, 0.0);
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            out[i + j] += u[i] * v[j];
    return out;
}

inline TransferFunction cascade(const TransferFunction& h1, const TransferFunction& h2) {
    return TransferFunction(convolve(h1.b, h2.b), convolve(h1.a, h2.a));
}

namespace detail {

/// Roots (in the z variable) of c0 + c1 z^-1 + ... + cm z^-m, i.e. of the
/// polynomial c0 z^m + c1 z^{m-1} + ... + cm, via companion-matrix
/// eigenvalues. Trailing zero coefficients reduce the degree.
inline std::vector<std::complex<double>> polynomial_roots(std::vector<double> c) {
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
    // strip leading zeros as well (degenerate but defensive for callers)
    std::size_t lead = 0;
    while (lead < c.size() && c[lead] == 0.0) ++lead;
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(lead));
    if (c.empty())
        throw invalid_input("polynomial_roots: zero polynomial");
    const std::size_t m = c.size() - 1;
    if (m == 0) return {};
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                                 static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i)
        comp(0, static_cast<Eigen::Index>(i)) = -c[i + 1] / c[0];
    for (std::size_t i = 1; i < m; ++i)
        comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> roots(m);
    for (std::size_t i = 0; i < m; ++i)
        roots[i] = es.eigenvalues()(static_cast<Eigen::Index>(i));
    return roots;
}

} // namespace detail

/// Pole/zero moduli and the resulting stability / invertibility verdict.
/// Roots within 1e-8 of the unit circle count as marginal, hence unstable.
struct StabilityReport {
    std::vector<double> pole_moduli;
    std::vector<double> zero_moduli;
    bool stable = false;
    bool invertible = false;
    bool marginal = false;

    static constexpr double kMarginalTol = 1e-8;
};

inline StabilityReport stability(const TransferFunction& tf) {
    StabilityReport rep;
    for (const auto& r : detail::polynomial_roots(tf.a))
        rep.pole_moduli.push_back(std::abs(r));
    for (const auto& r : detail::polynomial_roots(tf.b))
        rep.zero_moduli.push_back(std::abs(r));
    rep.stable = true;
    for (double m : rep.pole_moduli) {
        if (std::abs(m - 1.0) <= StabilityReport::kMarginalTol) {
            rep.marginal = true;
            rep.stable = false;
        } else if (m > 1.0) {
            rep.stable = false;
        }
    }
    rep.invertible = true;
    for (double m : rep.zero_moduli)
        if (m >= 1.0 - StabilityReport::kMarginalTol) rep.invertible = false;
    return rep;
}

// ---- operators the analysis covers ----------------------------------------

/// (1 - z^-1)^d
inline TransferFunction difference_operator(std::size_t d) {
    if (d < 1)
        throw invalid_input("difference_operator: d must be >= 1");
    std::vector<double> b{1.0, -1.0};
    std::vector<double> acc{1.0};
    for (std::size_t i = 0; i < d; ++i) acc = convolve(acc, b);
    return TransferFunction(std::move(acc), {1.0});
}

/// 1 - z^-L
inline TransferFunction seasonal_difference(std::size_t lag) {
    if (lag < 1)
        throw invalid_input("seasonal_difference: lag must be >= 1");
    std::vector<double> b(lag + 1, 0.0);
    b[0] = 1.0;
    b[lag] = -1.0;
    return TransferFunction(std::move(b), {1.0});
}

/// Exponential smoothing: alpha / (1 - (1-alpha) z^-1)
inline TransferFunction ets(double alpha) {
    if (!(alpha > 0.0) || !(alpha <= 1.0))
        throw invalid_input("ets: alpha must lie in (0, 1]");
    return TransferFunction({alpha}, {1.0, -(1.0 - alpha)});
}

/// Length-N moving average in FIR form (avoids the removable pole at z=1).
inline TransferFunction moving_average(std::size_t n) {
    if (n < 1)
        throw invalid_input("moving_average: window must be >= 1");
    return TransferFunction(std::vector<double>(n, 1.0 / static_cast<double>(n)), {1.0});
}

/// Notching comb: (1+rho)/2 * (1 - z^-N) / (1 - rho z^-N)
inline TransferFunction comb_notch(double rho, std::size_t n) {
    if (!(rho >= 0.0) || !(rho < 1.0))
        throw invalid_input("comb_notch: rho must lie in [0, 1)");
    if (n < 1)
        throw invalid_input("comb_notch: lag must be >= 1");
    std::vector<double> b(n + 1, 0.0), a(n + 1, 0.0);
    const double g = (1.0 + rho) / 2.0;
    b[0] = g;
    b[n] = -g;
    a[0] = 1.0;
    a[n] = -rho;
    return TransferFunction(std::move(b), std::move(a));
}

/// Peaking comb: (1-rho)/2 * (1 + z^-N) / (1 - rho z^-N)
inline TransferFunction comb_peak(double rho, std::size_t n) {
    if (!(rho >= 0.0) || !(rho < 1.0))
        throw invalid_input("comb_peak: rho must lie in [0, 1)");
    if (n < 1)
        throw invalid_input("comb_peak: lag must be >= 1");
    std::vector<double> b(n + 1, 0.0), a(n + 1, 0.0);
    const double g = (1.0 - rho) / 2.0;
    b[0] = g;
    b[n] = g;
    a[0] = 1.0;
    a[n] = -rho;
    return TransferFunction(std::move(b), std::move(a));
}

} // namespace armasin

#endif
