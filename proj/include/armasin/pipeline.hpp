#ifndef ARMASIN_PIPELINE_HPP
#define ARMASIN_PIPELINE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "armasin/arma.hpp"
#include "armasin/errors.hpp"
#include "armasin/filter_design.hpp"
#include "armasin/series.hpp"
#include "armasin/spectrum.hpp"
#include "armasin/transfer_function.hpp"
#include "armasin/zero_phase.hpp"

namespace armasin {

enum class RegularizationMode {
    automatic,           // route by detected peaks
    highpass,            // remove a low-frequency band with one filter
    bandstop,            // notch out listed bands
    seasonal_difference, // single-pass 1 - z^-L
    difference,          // single-pass (1 - z^-1)^d
    direct               // estimate sinusoids directly, no filter
};

enum class PredictableForecast { sinusoids, polynomial, none };

struct RegularizationPlan {
    RegularizationMode mode = RegularizationMode::automatic;
    FilterSpec highpass_spec;                 // highpass mode
    std::vector<FilterSpec> bandstop_specs;   // bandstop mode
    std::size_t seasonal_lag = 12;            // seasonal_difference mode
    std::size_t difference_order = 1;         // difference mode
    double peak_threshold_factor = 8.0;

    PredictableForecast predictable = PredictableForecast::none;
    std::size_t sinusoid_count = 1;           // K for the sinusoid path
    std::size_t polynomial_degree = 1;        // <= 2
    /// Fraction of the predictable series (its tail) the trend/sinusoid fit
    /// uses; 1.0 fits the whole series.
    double fit_window_fraction = 1.0;

    void validate() const {
        if (!(peak_threshold_factor > 1.0))
            throw invalid_input("plan: peak_threshold_factor must exceed 1");
        if (polynomial_degree > 2)
            throw invalid_input("plan: polynomial degree must be <= 2");
        if (!(fit_window_fraction > 0.0) || !(fit_window_fraction > 0.0 && fit_window_fraction <= 1.0))
            throw invalid_input("plan: fit_window_fraction must lie in (0, 1]");
        if (mode == RegularizationMode::direct && sinusoid_count < 1)
            throw invalid_input("plan: direct mode needs at least one sinusoid");
    }
};

struct RegularizationResult {
    Series regular;
    Series predictable;   // x - regular; all zeros in difference modes
    std::vector<SinusoidComponent> components;
    double component_offset = 0.0;  // constant term of the sinusoid fit
    bool passthrough = false;       // auto mode found no peaks
    bool differenced = false;       // regular lives on the differenced scale
};

namespace detail {

/// Dominant interior DFT bin of (x - mean); 0 when the half-spectrum is flat.
inline std::size_t dominant_bin(const std::vector<double>& x) {
    const std::size_t n = x.size();
    double mu = 0.0;
    for (double v : x) mu += v;
    mu /= static_cast<double>(n);
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = x[i] - mu;
    const Spectrum s = dft(Series(std::move(c)));
    std::size_t best = 1;
    for (std::size_t k = 2; k <= n / 2; ++k)
        if (std::abs(s.bins[k]) > std::abs(s.bins[best])) best = k;
    return best;
}

/// Offset + single sinusoid, frequency refined around the dominant bin of
/// the tail window; phase referenced to the absolute sample index.
inline SinusoidComponent windowed_sinusoid(const std::vector<double>& x,
                                           double window_fraction,
                                           double& offset_out) {
    const std::size_t n = x.size();
    std::size_t start = static_cast<std::size_t>(
        std::floor(static_cast<double>(n) * (1.0 - window_fraction)));
    if (n - start < 8) start = (n > 8) ? n - 8 : 0;
    std::vector<double> win(x.begin() + static_cast<std::ptrdiff_t>(start), x.end());
    const std::size_t m = win.size();
    const std::size_t k = dominant_bin(win);
    const double bin_w = 2.0 * std::numbers::pi / static_cast<double>(m);
    const double lo = std::max(1e-4, (static_cast<double>(k) - 1.0) * bin_w);
    const double hi = std::min(std::numbers::pi - 1e-9,
                               (static_cast<double>(k) + 1.0) * bin_w);
    return fit_sinusoid(Series(std::move(win)), lo, hi, &offset_out, start);
}

inline Series zeros_like(const Series& x) {
    return Series(std::vector<double>(x.size(), 0.0), x.sampling_period);
}

/// Build a bandstop spec bracketing digital frequency w (rad/sample).
inline FilterSpec auto_bandstop(double w) {
    const double f = w / std::numbers::pi;
    FilterSpec spec;
    spec.band = BandKind::bandstop;
    const double inner = std::min(0.004, f / 4.0);
    const double outer = std::min(0.010, f / 2.0);
    spec.stopband_edges = {f - inner, f + inner};
    spec.passband_edges = {f - outer, f + outer};
    spec.passband_ripple_db = 1.0;
    spec.stopband_attenuation_db = 20.0;
    if (spec.passband_edges[1] >= 1.0) {
        spec.passband_edges[1] = 0.5 * (1.0 + spec.stopband_edges[1]);
    }
    return spec;
}

} // namespace detail

/// Split x into a regular (filtered) part and the predictable remainder.
inline RegularizationResult regularize(const Series& x, const RegularizationPlan& plan) {
    x.validate();
    plan.validate();
    if (x.size() < 32)
        throw invalid_input("regularize: need at least 32 samples");

    RegularizationResult out{x, detail::zeros_like(x), {}, 0.0, false, false};

    auto subtract = [&](const Series& filtered) {
        out.regular = filtered;
        out.predictable = x;
        for (std::size_t i = 0; i < x.size(); ++i)
            out.predictable.values[i] = x.values[i] - filtered.values[i];
    };

    switch (plan.mode) {
        case RegularizationMode::highpass: {
            const TransferFunction tf = design_elliptic(plan.highpass_spec);
            subtract(zero_phase_filter(tf, x, /*reflect_padding=*/true));
            if (plan.predictable == PredictableForecast::sinusoids) {
                out.components.push_back(detail::windowed_sinusoid(
                    out.predictable.values, plan.fit_window_fraction,
                    out.component_offset));
            }
            return out;
        }
        case RegularizationMode::bandstop: {
            if (plan.bandstop_specs.empty())
                throw invalid_input("regularize: bandstop mode needs specs");
            Series filtered = x;
            for (const auto& spec : plan.bandstop_specs) {
                const TransferFunction tf = design_elliptic(spec);
                filtered = zero_phase_filter(tf, filtered, true);
            }
            subtract(filtered);
            if (plan.predictable == PredictableForecast::sinusoids) {
                out.components.push_back(detail::windowed_sinusoid(
                    out.predictable.values, plan.fit_window_fraction,
                    out.component_offset));
            }
            return out;
        }
        case RegularizationMode::direct: {
            double offset = 0.0;
            std::vector<double> residual = x.values;
            for (std::size_t k = 0; k < plan.sinusoid_count; ++k) {
                double off = 0.0;
                const SinusoidComponent c =
                    detail::windowed_sinusoid(residual, plan.fit_window_fraction, off);
                out.components.push_back(c);
                offset += off;
                for (std::size_t i = 0; i < residual.size(); ++i)
                    residual[i] -= off + c.amplitude *
                        std::cos(c.frequency * static_cast<double>(i) + c.phase);
            }
            out.component_offset = offset;
            out.regular = Series(std::move(residual), x.sampling_period);
            out.predictable = x;
            for (std::size_t i = 0; i < x.size(); ++i)
                out.predictable.values[i] = x.values[i] - out.regular.values[i];
            return out;
        }
        case RegularizationMode::difference: {
            out.regular = apply(difference_operator(plan.difference_order), x);
            out.differenced = true;
            return out;
        }
        case RegularizationMode::seasonal_difference: {
            out.regular = apply(seasonal_difference(plan.seasonal_lag), x);
            out.differenced = true;
            return out;
        }
        case RegularizationMode::automatic:
            break;
    }

    // auto: inspect the spectrum and route
    const Spectrum s = dft(x);
    const auto peaks = detect_line_spectra(s, plan.peak_threshold_factor);
    if (peaks.empty()) {
        out.passthrough = true;
        return out;
    }
    const double low_cut = 0.05 * std::numbers::pi;
    double w_low_max = 0.0;
    std::vector<double> interior;
    for (std::size_t k : peaks) {
        const double w = s.bin_frequency(k);
        if (w < low_cut)
            w_low_max = std::max(w_low_max, w);
        else
            interior.push_back(w);
    }

    RegularizationPlan routed = plan;
    if (w_low_max > 0.0 && interior.empty()) {
        routed.mode = RegularizationMode::highpass;
        if (routed.predictable == PredictableForecast::none)
            routed.predictable = PredictableForecast::polynomial;
        FilterSpec spec;
        spec.band = BandKind::highpass;
        const double ws = std::min(0.2, 1.5 * w_low_max / std::numbers::pi + 0.02);
        spec.stopband_edges = {ws};
        spec.passband_edges = {std::min(0.4, ws + 0.05)};
        spec.passband_ripple_db = 1.0;
        spec.stopband_attenuation_db = 10.0;
        routed.highpass_spec = spec;
        return regularize(x, routed);
    }
    routed.mode = RegularizationMode::bandstop;
    if (routed.predictable == PredictableForecast::none)
        routed.predictable = PredictableForecast::sinusoids;
    routed.bandstop_specs.clear();
    for (double w : interior)
        routed.bandstop_specs.push_back(detail::auto_bandstop(w));
    if (routed.bandstop_specs.empty()) {
        out.passthrough = true;
        return out;
    }
    return regularize(x, routed);
}

struct ForecastReport {
    Series regular_forecast;
    Series predictable_forecast;
    Series combined;
    Series regularized_history;
    ArmaModel fitted_model;
    std::vector<SinusoidComponent> detected_components;
    double component_offset = 0.0;
    bool passthrough = false;
    std::string stage = "ok";
};

namespace detail {

/// Least-squares polynomial fit (degree <= 2) over the tail window, then
/// extrapolation at indices start .. start+horizon-1.
inline std::vector<double> polynomial_extrapolate(const std::vector<double>& x,
                                                  std::size_t degree,
                                                  double window_fraction,
                                                  std::size_t horizon) {
    const std::size_t n = x.size();
    std::size_t start = static_cast<std::size_t>(
        std::floor(static_cast<double>(n) * (1.0 - window_fraction)));
    if (n - start < degree + 2) start = 0;
    const std::size_t m = n - start;
    const double scale = static_cast<double>(n);  // condition the Vandermonde
    Eigen::MatrixXd X(m, degree + 1);
    Eigen::VectorXd rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double t = static_cast<double>(start + i) / scale;
        double pw = 1.0;
        for (std::size_t d = 0; d <= degree; ++d) {
            X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) = pw;
            pw *= t;
        }
        rhs(static_cast<Eigen::Index>(i)) = x[start + i];
    }
    const Eigen::VectorXd coef =
        X.colPivHouseholderQr().solve(rhs);
    std::vector<double> out(horizon);
    for (std::size_t h = 0; h < horizon; ++h) {
        const double t = static_cast<double>(n + h) / scale;
        double acc = 0.0, pw = 1.0;
        for (std::size_t d = 0; d <= degree; ++d) {
            acc += coef(static_cast<Eigen::Index>(d)) * pw;
            pw *= t;
        }
        out[h] = acc;
    }
    return out;
}

} // namespace detail

/// ARMA-SIN: regularize, fit/forecast the regular part with ARMA, forecast
/// the predictable part per plan, sum the two.
inline ForecastReport arma_sin_forecast(const Series& x, const RegularizationPlan& plan,
                                        std::optional<std::size_t> p,
                                        std::optional<std::size_t> q,
                                        std::size_t horizon) {
    if (horizon < 1)
        throw invalid_input("arma_sin_forecast: horizon must be >= 1");

    RegularizationResult reg;
    try {
        reg = regularize(x, plan);
    } catch (const computation_error& e) {
        throw computation_error(std::string("[spectral|filtering] ") + e.what());
    }
    if (reg.differenced)
        throw invalid_input(
            "arma_sin_forecast: difference modes belong to the baseline path");

    ForecastReport rep;
    rep.regularized_history = reg.regular;
    rep.detected_components = reg.components;
    rep.component_offset = reg.component_offset;
    rep.passthrough = reg.passthrough;

    std::size_t fit_p = 4, fit_q = 1;
    try {
        if (p && q) {
            fit_p = *p;
            fit_q = *q;
        } else {
            const OrderSelection sel = select_order(reg.regular, 5, 2);
            fit_p = sel.p;
            fit_q = sel.q;
        }
        rep.fitted_model = fit(reg.regular, fit_p, fit_q);
        rep.regular_forecast = forecast(rep.fitted_model, reg.regular, horizon);
    } catch (const computation_error& e) {
        throw computation_error(std::string("[arma] ") + e.what());
    }

    const std::size_t n = x.size();
    std::vector<double> pf(horizon, 0.0);
    try {
        if (!reg.passthrough && plan.predictable == PredictableForecast::sinusoids &&
            !reg.components.empty()) {
            const Series sf = extrapolate_sinusoids(reg.components, n, horizon,
                                                    x.sampling_period);
            for (std::size_t h = 0; h < horizon; ++h)
                pf[h] = sf.values[h] + reg.component_offset;
        } else if (!reg.passthrough &&
                   plan.predictable == PredictableForecast::polynomial) {
            pf = detail::polynomial_extrapolate(reg.predictable.values,
                                                plan.polynomial_degree,
                                                plan.fit_window_fraction, horizon);
        }
    } catch (const computation_error& e) {
        throw computation_error(std::string("[forecast] ") + e.what());
    }
    rep.predictable_forecast = Series(std::move(pf), x.sampling_period);

    std::vector<double> comb(horizon);
    for (std::size_t h = 0; h < horizon; ++h)
        comb[h] = rep.regular_forecast.values[h] + rep.predictable_forecast.values[h];
    rep.combined = Series(std::move(comb), x.sampling_period);
    return rep;
}

/// S-ARIMA baseline: single-pass differencing (zero initial conditions, no
/// warm-up trimming), ARMA fit/forecast on the differenced series, then
/// cumulative reconstruction of levels from the observed tail.
inline ForecastReport sarima_baseline_forecast(const Series& x, std::size_t d,
                                               std::optional<std::size_t> L,
                                               std::optional<std::size_t> p,
                                               std::optional<std::size_t> q,
                                               std::size_t horizon) {
    x.validate();
    if (horizon < 1)
        throw invalid_input("sarima_baseline_forecast: horizon must be >= 1");
    const std::size_t lag = L ? *L : 0;
    if (d + lag >= x.size())
        throw invalid_input("sarima_baseline_forecast: d + L must be < len(x)");

    Series w = x;
    if (d > 0) w = apply(difference_operator(d), w);
    if (lag > 0) w = apply(seasonal_difference(lag), w);

    ForecastReport rep;
    rep.regularized_history = w;
    std::size_t fit_p = 4, fit_q = 1;
    try {
        if (p && q) {
            fit_p = *p;
            fit_q = *q;
        } else {
            const OrderSelection sel = select_order(w, 5, 2);
            fit_p = sel.p;
            fit_q = sel.q;
        }
        rep.fitted_model = fit(w, fit_p, fit_q);
        rep.regular_forecast = forecast(rep.fitted_model, w, horizon);
    } catch (const computation_error& e) {
        throw computation_error(std::string("[arma] ") + e.what());
    }

    // invert the seasonal part against the truly differenced history
    std::vector<double> lev = rep.regular_forecast.values;
    if (lag > 0) {
        std::vector<double> base = x.values;
        for (std::size_t i = 0; i < d; ++i) {
            std::vector<double> diffd(base.size() - 1);
            for (std::size_t t = 0; t + 1 < base.size(); ++t)
                diffd[t] = base[t + 1] - base[t];
            base = std::move(diffd);
        }
        std::vector<double> z = base;
        for (std::size_t h = 0; h < horizon; ++h)
            z.push_back(lev[h] + z[z.size() - lag]);
        lev.assign(z.end() - static_cast<std::ptrdiff_t>(horizon), z.end());
    }
    // then the ordinary differences, seeding each level from the history tail
    if (d > 0) {
        std::vector<std::vector<double>> levels{x.values};
        for (std::size_t i = 1; i < d; ++i) {
            const auto& prev = levels.back();
            std::vector<double> diffd(prev.size() - 1);
            for (std::size_t t = 0; t + 1 < prev.size(); ++t)
                diffd[t] = prev[t + 1] - prev[t];
            levels.push_back(std::move(diffd));
        }
        for (std::size_t i = d; i-- > 0;) {
            double acc = levels[i].back();
            for (double& v : lev) {
                acc += v;
                v = acc;
            }
        }
    }
    rep.combined = Series(lev, x.sampling_period);
    rep.predictable_forecast =
        Series(std::vector<double>(horizon, 0.0), x.sampling_period);
    // report the level-domain forecast consistently
    rep.regular_forecast = rep.combined;
    return rep;
}

/// Band decomposition: one zero-phase band filter per requested band plus a
/// final residual so the components sum back to x.
inline std::vector<Series> decompose(const Series& x,
                                     const std::vector<std::pair<double, double>>& bands) {
    x.validate();
    for (const auto& b : bands)
        if (!(b.first >= 0.0) || !(b.second <= std::numbers::pi) ||
            !(b.first < b.second))
            throw invalid_input("decompose: bands must satisfy 0 <= lo < hi <= pi");
    std::vector<std::pair<double, double>> sorted = bands;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i].first < sorted[i - 1].second)
            throw invalid_input("decompose: bands must be disjoint");

    std::vector<Series> out;
    Series residual = x;
    const double eps = 1e-9;
    for (const auto& band : bands) {
        const double flo = band.first / std::numbers::pi;
        const double fhi = band.second / std::numbers::pi;
        Series comp(std::vector<double>(x.size(), 0.0), x.sampling_period);
        if (flo <= eps && fhi >= 1.0 - eps) {
            comp = x;  // all-pass request
        } else {
            FilterSpec spec;
            spec.passband_ripple_db = 0.5;
            spec.stopband_attenuation_db = 30.0;
            const double margin = 0.05;
            if (flo <= eps) {
                spec.band = BandKind::lowpass;
                spec.passband_edges = {fhi};
                spec.stopband_edges = {std::min(0.5 * (1.0 + fhi), fhi + margin)};
            } else if (fhi >= 1.0 - eps) {
                spec.band = BandKind::highpass;
                spec.passband_edges = {flo};
                spec.stopband_edges = {std::max(0.5 * flo, flo - margin)};
            } else {
                spec.band = BandKind::bandpass;
                spec.passband_edges = {flo, fhi};
                spec.stopband_edges = {std::max(0.5 * flo, flo - margin),
                                       std::min(0.5 * (1.0 + fhi), fhi + margin)};
            }
            comp = zero_phase_filter(design_elliptic(spec), x, true);
        }
        for (std::size_t i = 0; i < x.size(); ++i)
            residual.values[i] -= comp.values[i];
        out.push_back(std::move(comp));
    }
    out.push_back(std::move(residual));
    return out;
}

} // namespace armasin

#endif
