#ifndef ARMASIN_ZERO_PHASE_HPP
#define ARMASIN_ZERO_PHASE_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "armasin/errors.hpp"
#include "armasin/transfer_function.hpp"

namespace armasin {

/// Forward-backward filtering: u = H x, v = reverse(u), w = H v,
/// y = reverse(w). Net effect is |H(e^{jw})|^2 with zero phase.
/// With `reflect_padding`, the input is extended on both ends by odd
/// reflection (length 3 * filter order) before the four steps and the
/// extension is trimmed afterwards; this suppresses start-up transients at
/// the cost of departing from the bare four-step form.
inline Series zero_phase_filter(const TransferFunction& tf, const Series& x,
                                bool reflect_padding = false) {
    x.validate();
    const StabilityReport rep = stability(tf);
    if (!rep.stable) {
        std::string msg = "zero_phase_filter: unstable filter; pole moduli:";
        for (double m : rep.pole_moduli) msg += " " + std::to_string(m);
        if (rep.marginal) msg += " (marginal)";
        throw invalid_input(msg);
    }

    std::size_t pad = 0;
    Series in = x;
    if (reflect_padding) {
        const std::size_t order = std::max(tf.a.size(), tf.b.size()) - 1;
        pad = std::min(3 * (order + 1), x.size() - 1);
        if (pad > 0) {
            std::vector<double> ext;
            ext.reserve(x.size() + 2 * pad);
            for (std::size_t i = pad; i >= 1; --i)
                ext.push_back(2.0 * x.values.front() - x.values[i]);
            ext.insert(ext.end(), x.values.begin(), x.values.end());
            const std::size_t n = x.size();
            for (std::size_t i = 1; i <= pad; ++i)
                ext.push_back(2.0 * x.values.back() - x.values[n - 1 - i]);
            in = Series(std::move(ext), x.sampling_period);
        }
    }

    Series u = apply(tf, in);
    Series v = u.reversed();
    Series w = apply(tf, v);
    Series y = w.reversed();

    if (pad > 0) {
        std::vector<double> trimmed(y.values.begin() + static_cast<std::ptrdiff_t>(pad),
                                    y.values.end() - static_cast<std::ptrdiff_t>(pad));
        return Series(std::move(trimmed), x.sampling_period);
    }
    return y;
}

} // namespace armasin

#endif
