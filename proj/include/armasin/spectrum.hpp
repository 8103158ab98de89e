#ifndef ARMASIN_SPECTRUM_HPP
#define ARMASIN_SPECTRUM_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "armasin/errors.hpp"
#include "armasin/fft.hpp"
#include "armasin/series.hpp"

namespace armasin {

/// Complex DFT bins of a Series. Bin k corresponds to digital frequency
/// w = 2*pi*k/N, N = origin_length.
struct Spectrum {
    std::vector<std::complex<double>> bins;
    std::size_t origin_length = 0;

    std::size_t size() const { return bins.size(); }
    double bin_frequency(std::size_t k) const {
        return 2.0 * std::numbers::pi * static_cast<double>(k) /
               static_cast<double>(origin_length);
    }
};

/// X(k) = sum_n x(n) e^{-j 2 pi n k / N}, fast for any N.
inline Spectrum dft(const Series& x) {
    if (x.values.empty())
        throw invalid_input("dft: empty series");
    std::vector<std::complex<double>> a(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) a[i] = x.values[i];
    Spectrum s;
    s.bins = detail::fft_any(std::move(a), false);
    s.origin_length = x.size();
    return s;
}

/// x(n) = (1/N) sum_k X(k) e^{j 2 pi n k / N}; real part is returned.
inline Series idft(const Spectrum& s, double sampling_period = 1.0) {
    if (s.bins.empty())
        throw invalid_input("idft: empty spectrum");
    auto a = detail::fft_any(s.bins, true);
    const double scale = 1.0 / static_cast<double>(a.size());
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i].real() * scale;
    return Series(std::move(out), sampling_period);
}

/// DTFT of a finite series at digital frequency w (zero outside support).
inline std::complex<double> dtft_eval(const Series& x, double w) {
    std::complex<double> acc(0.0);
    const std::complex<double> step(std::cos(-w), std::sin(-w));
    std::complex<double> ph(1.0);
    for (double v : x.values) {
        acc += v * ph;
        ph *= step;
    }
    return acc;
}

/// Strict local maxima of |bins| over k in [1, N/2] exceeding
/// threshold_factor * median magnitude of that half-spectrum. Adjacent
/// qualifying bins merge to the largest; result sorted by descending
/// magnitude.
inline std::vector<std::size_t> detect_line_spectra(const Spectrum& s,
                                                    double threshold_factor) {
    const std::size_t n = s.origin_length;
    if (n < 4)
        throw invalid_input("detect_line_spectra: need at least 4 bins");
    if (!(threshold_factor > 1.0))
        throw invalid_input("detect_line_spectra: threshold_factor must exceed 1");
    const std::size_t half = n / 2;
    std::vector<double> mag(half + 1);
    for (std::size_t k = 0; k <= half; ++k) mag[k] = std::abs(s.bins[k]);

    std::vector<double> sorted(mag.begin() + 1, mag.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = sorted.size();
    const double median = (m % 2) ? sorted[m / 2]
                                  : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
    const double thresh = threshold_factor * median;

    std::vector<std::size_t> peaks;
    for (std::size_t k = 1; k <= half; ++k) {
        const double left = mag[k - 1];
        const double right = (k + 1 <= half) ? mag[k + 1]
                                             : std::abs(s.bins[(k + 1) % n]);
        if (mag[k] > left && mag[k] > right && mag[k] > thresh)
            peaks.push_back(k);
    }
    // merge neighbouring peaks (within one bin) keeping the larger
    std::vector<std::size_t> merged;
    for (std::size_t k : peaks) {
        if (!merged.empty() && k - merged.back() <= 1) {
            if (mag[k] > mag[merged.back()]) merged.back() = k;
        } else {
            merged.push_back(k);
        }
    }
    std::sort(merged.begin(), merged.end(),
              [&](std::size_t a, std::size_t b) { return mag[a] > mag[b]; });
    return merged;
}

/// Raw-bin sinusoid parameters: w = 2 pi k/N, A = 2|X(k)|/N, phi = arg X(k).
inline SinusoidComponent estimate_sinusoid(const Series& x, std::size_t bin) {
    const std::size_t n = x.size();
    if (bin == 0 || bin > n / 2)
        throw invalid_input("estimate_sinusoid: bin must lie in [1, N/2]");
    const Spectrum s = dft(x);
    const std::complex<double> v = s.bins[bin];
    SinusoidComponent c;
    c.frequency = s.bin_frequency(bin);
    c.amplitude = 2.0 * std::abs(v) / static_cast<double>(n);
    c.phase = std::arg(v);
    return c;
}

namespace detail {

/// Least-squares fit of offset + A cos(w n + phi) for fixed w over sample
/// indices index_offset .. index_offset+len-1. Returns residual sum of squares.
inline double sinusoid_ls(const std::vector<double>& x, double w,
                          std::size_t index_offset, double& offset,
                          double& a_cos, double& b_sin) {
    // normal equations for the 3-column regressor [1, cos(wn), sin(wn)]
    double s11 = 0, s12 = 0, s13 = 0, s22 = 0, s23 = 0, s33 = 0;
    double r1 = 0, r2 = 0, r3 = 0;
    const std::size_t m = x.size();
    for (std::size_t i = 0; i < m; ++i) {
        const double n = static_cast<double>(index_offset + i);
        const double c = std::cos(w * n), s = std::sin(w * n);
        s11 += 1.0; s12 += c; s13 += s;
        s22 += c * c; s23 += c * s; s33 += s * s;
        r1 += x[i]; r2 += x[i] * c; r3 += x[i] * s;
    }
    // 3x3 solve by Cramer
    const double det = s11 * (s22 * s33 - s23 * s23) - s12 * (s12 * s33 - s23 * s13) +
                       s13 * (s12 * s23 - s22 * s13);
    if (std::abs(det) < 1e-12) {
        offset = r1 / std::max(s11, 1.0);
        a_cos = b_sin = 0.0;
    } else {
        offset = (r1 * (s22 * s33 - s23 * s23) - s12 * (r2 * s33 - s23 * r3) +
                  s13 * (r2 * s23 - s22 * r3)) / det;
        a_cos = (s11 * (r2 * s33 - s23 * r3) - r1 * (s12 * s33 - s23 * s13) +
                 s13 * (s12 * r3 - r2 * s13)) / det;
        b_sin = (s11 * (s22 * r3 - r2 * s23) - s12 * (s12 * r3 - r2 * s13) +
                 r1 * (s12 * s23 - s22 * s13)) / det;
    }
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double n = static_cast<double>(index_offset + i);
        const double fit = offset + a_cos * std::cos(w * n) + b_sin * std::sin(w * n);
        rss += (x[i] - fit) * (x[i] - fit);
    }
    return rss;
}

} // namespace detail

/// Refined sinusoid estimate: golden-section search of the least-squares
/// residual over w in [w_lo, w_hi], then closed-form amplitude/phase.
/// `offset_out`, when non-null, receives the fitted constant offset.
/// `index_offset` is the absolute sample index of x[0], so phases are
/// referenced to the global time axis.
inline SinusoidComponent fit_sinusoid(const Series& x, double w_lo, double w_hi,
                                      double* offset_out = nullptr,
                                      std::size_t index_offset = 0) {
    if (!(w_lo >= 0.0) || !(w_hi <= std::numbers::pi) || !(w_lo < w_hi))
        throw invalid_input("fit_sinusoid: need 0 <= w_lo < w_hi <= pi");
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = w_lo, b = w_hi;
    double off, ac, bs;
    auto f = [&](double w) { return detail::sinusoid_ls(x.values, w, index_offset, off, ac, bs); };
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 80 && (b - a) > 1e-12; ++it) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a); fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a); fd = f(d);
        }
    }
    const double w = 0.5 * (a + b);
    detail::sinusoid_ls(x.values, w, index_offset, off, ac, bs);
    if (offset_out) *offset_out = off;
    SinusoidComponent comp;
    comp.frequency = w;
    comp.amplitude = std::hypot(ac, bs);
    comp.phase = std::atan2(-bs, ac);
    return comp;
}

} // namespace armasin

#endif
