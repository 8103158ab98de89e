#ifndef ARMASIN_SERIES_HPP
#define ARMASIN_SERIES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "armasin/errors.hpp"

namespace armasin {

/// Uniformly sampled real-valued sequence. `sampling_period` is seconds per
/// sample (Ts); digital frequency w relates to physical frequency via
/// Omega = w / Ts.
struct Series {
    std::vector<double> values;
    double sampling_period = 1.0;

    Series() = default;
    Series(std::vector<double> v, double ts = 1.0)
        : values(std::move(v)), sampling_period(ts) {
        validate();
    }

    void validate() const {
        if (values.empty())
            throw invalid_input("Series must contain at least one sample");
        if (!(sampling_period > 0.0))
            throw invalid_input("Series sampling_period must be positive");
        for (double v : values)
            if (!std::isfinite(v))
                throw invalid_input("Series values must be finite");
    }

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }

    double mean() const {
        double s = 0.0;
        for (double v : values) s += v;
        return s / static_cast<double>(values.size());
    }

    Series reversed() const {
        Series r = *this;
        std::reverse(r.values.begin(), r.values.end());
        return r;
    }
};

/// (amplitude, digital frequency, phase) of one line-spectra component:
/// x_p(n) = amplitude * cos(frequency * n + phase).
struct SinusoidComponent {
    double amplitude = 0.0;  // >= 0
    double frequency = 0.0;  // rad/sample, in [0, pi]
    double phase = 0.0;      // in (-pi, pi]
};

/// Evaluate a sum of sinusoids at sample indices start .. start+horizon-1.
inline Series extrapolate_sinusoids(const std::vector<SinusoidComponent>& components,
                                    std::size_t start, std::size_t horizon,
                                    double sampling_period = 1.0) {
    if (horizon < 1)
        throw invalid_input("extrapolate_sinusoids: horizon must be >= 1");
    std::vector<double> out(horizon, 0.0);
    for (std::size_t m = 0; m < horizon; ++m) {
        const double n = static_cast<double>(start + m);
        for (const auto& c : components)
            out[m] += c.amplitude * std::cos(c.frequency * n + c.phase);
    }
    return Series(std::move(out), sampling_period);
}

} // namespace armasin

#endif
