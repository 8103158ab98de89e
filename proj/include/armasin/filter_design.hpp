#ifndef ARMASIN_FILTER_DESIGN_HPP
#define ARMASIN_FILTER_DESIGN_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "armasin/errors.hpp"
#include "armasin/transfer_function.hpp"

namespace armasin {

enum class BandKind { lowpass, highpass, bandpass, bandstop };

inline std::string to_string(BandKind b) {
    switch (b) {
        case BandKind::lowpass: return "lowpass";
        case BandKind::highpass: return "highpass";
        case BandKind::bandpass: return "bandpass";
        case BandKind::bandstop: return "bandstop";
    }
    return "?";
}

/// Frequencies are fractions of Nyquist (w / pi), strictly inside (0, 1).
struct FilterSpec {
    BandKind band = BandKind::lowpass;
    std::vector<double> passband_edges;
    std::vector<double> stopband_edges;
    double passband_ripple_db = 1.0;     // Rp
    double stopband_attenuation_db = 20.0;  // Rs

    void validate() const {
        auto in_range = [](const std::vector<double>& v) {
            for (double e : v)
                if (!(e > 0.0) || !(e < 1.0)) return false;
            return true;
        };
        const bool two_band =
            band == BandKind::bandpass || band == BandKind::bandstop;
        const std::size_t need = two_band ? 2 : 1;
        if (passband_edges.size() != need || stopband_edges.size() != need)
            throw invalid_input("FilterSpec: " + to_string(band) + " needs " +
                                std::to_string(need) + " edge(s) per band");
        if (!in_range(passband_edges) || !in_range(stopband_edges))
            throw invalid_input("FilterSpec: edges must lie strictly in (0, 1)");
        if (!(passband_ripple_db > 0.0) || !(stopband_attenuation_db > 0.0))
            throw invalid_input("FilterSpec: ripple and attenuation must be positive");
        if (!(passband_ripple_db < stopband_attenuation_db))
            throw invalid_input("FilterSpec: ripple must be below attenuation");
        switch (band) {
            case BandKind::lowpass:
                if (!(passband_edges[0] < stopband_edges[0]))
                    throw invalid_input("FilterSpec: lowpass needs Wp < Ws");
                break;
            case BandKind::highpass:
                if (!(stopband_edges[0] < passband_edges[0]))
                    throw invalid_input("FilterSpec: highpass needs Ws < Wp");
                break;
            case BandKind::bandpass:
                if (!(stopband_edges[0] < stopband_edges[1]) ||
                    !(passband_edges[0] < passband_edges[1]) ||
                    !(stopband_edges[0] < passband_edges[0]) ||
                    !(passband_edges[1] < stopband_edges[1]))
                    throw invalid_input(
                        "FilterSpec: bandpass needs Fstop1 < Fpass1 < Fpass2 < Fstop2");
                break;
            case BandKind::bandstop:
                if (!(passband_edges[0] < stopband_edges[0]) ||
                    !(stopband_edges[0] < stopband_edges[1]) ||
                    !(stopband_edges[1] < passband_edges[1]))
                    throw invalid_input(
                        "FilterSpec: bandstop needs Fpass1 < Fstop1 < Fstop2 < Fpass2");
                break;
        }
    }
};

namespace detail {

using cplx = std::complex<double>;

/// Descending Landen sequence k_1, k_2, ... until below tol.
inline std::vector<double> landen(double k, double tol = 1e-15) {
    std::vector<double> v;
    while (k > tol) {
        k = k / (1.0 + std::sqrt(1.0 - k * k));
        k *= k;
        v.push_back(k);
        if (v.size() > 64) break;
    }
    return v;
}

/// Complete elliptic integral K(k) via the Landen product.
inline double ellip_K(double k) {
    if (k >= 1.0)
        throw design_failure("elliptic integral: modulus must be < 1");
    double prod = 1.0;
    for (double kn : landen(k)) prod *= 1.0 + kn;
    return prod * std::numbers::pi / 2.0;
}

inline double ellip_Kc(double k) {
    return ellip_K(std::sqrt(std::max(0.0, 1.0 - k * k)));
}

/// cd(u*K, k) for complex u (u in units of the quarter period K).
inline cplx cde(cplx u, double k) {
    const auto v = landen(k);
    cplx w = std::cos(u * (std::numbers::pi / 2.0));
    for (std::size_t i = v.size(); i-- > 0;)
        w = (1.0 + v[i]) * w / (1.0 + v[i] * w * w);
    return w;
}

/// sn(u*K, k) for complex u.
inline cplx sne(cplx u, double k) {
    const auto v = landen(k);
    cplx w = std::sin(u * (std::numbers::pi / 2.0));
    for (std::size_t i = v.size(); i-- > 0;)
        w = (1.0 + v[i]) * w / (1.0 + v[i] * w * w);
    return w;
}

/// Inverse of sne: u with sn(u*K, k) = w, principal branch.
inline cplx asne(cplx w, double k) {
    std::vector<double> v = landen(k);
    double prev = k;
    for (double vn : v) {
        w = 2.0 * w / ((1.0 + vn) * (1.0 + std::sqrt(1.0 - prev * prev * w * w)));
        prev = vn;
    }
    return 2.0 / std::numbers::pi * std::asin(w);
}

/// Solve the degree equation for the selectivity k given order n and
/// discrimination k1 (via the complementary-modulus product formula).
inline double ellipdeg(std::size_t n, double k1) {
    const double kc = std::sqrt(1.0 - k1 * k1);
    const std::size_t L = n / 2;
    double prod = 1.0;
    for (std::size_t i = 1; i <= L; ++i) {
        const double ui = (2.0 * static_cast<double>(i) - 1.0) / static_cast<double>(n);
        prod *= sne(cplx(ui, 0.0), kc).real();
    }
    const double kp = std::pow(kc, static_cast<double>(n)) * std::pow(prod, 4.0);
    return std::sqrt(1.0 - kp * kp);
}

struct Zpk {
    std::vector<cplx> z;
    std::vector<cplx> p;
    double k = 1.0;
};

/// Analog elliptic low-pass prototype with passband edge at 1 rad/s.
inline Zpk ellip_prototype(std::size_t order, double rp_db, double rs_db) {
    if (order < 1)
        throw design_failure("elliptic prototype: order must be >= 1");
    const double eps_p = std::sqrt(std::pow(10.0, rp_db / 10.0) - 1.0);
    const double eps_s = std::sqrt(std::pow(10.0, rs_db / 10.0) - 1.0);
    const double k1 = eps_p / eps_s;
    const double k = ellipdeg(order, k1);
    const std::size_t L = order / 2;
    const bool odd = (order % 2) != 0;

    Zpk out;
    const cplx j(0.0, 1.0);
    const cplx v0 = -j * asne(j / eps_p, k1) / static_cast<double>(order);
    if (odd) out.p.push_back(j * sne(j * v0, k));
    for (std::size_t i = 1; i <= L; ++i) {
        const double ui = (2.0 * static_cast<double>(i) - 1.0) /
                          static_cast<double>(order);
        const double zeta = cde(cplx(ui, 0.0), k).real();
        const cplx zi = j / (k * zeta);
        out.z.push_back(zi);
        out.z.push_back(std::conj(zi));
        const cplx pi_ = j * cde(cplx(ui, 0.0) - j * v0, k);
        out.p.push_back(pi_);
        out.p.push_back(std::conj(pi_));
    }
    for (const auto& p : out.p)
        if (p.real() >= 0.0)
            throw design_failure("elliptic prototype: right-half-plane pole");

    cplx num(1.0), den(1.0);
    for (const auto& z : out.z) num *= -z;
    for (const auto& p : out.p) den *= -p;
    out.k = (den / num).real();
    if (!odd) out.k *= std::pow(10.0, -rp_db / 20.0);
    return out;
}

inline Zpk lp_to_lp(Zpk h, double wo) {
    const auto deg = h.p.size() - h.z.size();
    for (auto& z : h.z) z *= wo;
    for (auto& p : h.p) p *= wo;
    h.k *= std::pow(wo, static_cast<double>(deg));
    return h;
}

inline Zpk lp_to_hp(Zpk h, double wo) {
    const auto deg = h.p.size() - h.z.size();
    cplx num(1.0), den(1.0);
    for (const auto& z : h.z) num *= -z;
    for (const auto& p : h.p) den *= -p;
    for (auto& z : h.z) z = wo / z;
    for (auto& p : h.p) p = wo / p;
    for (std::size_t i = 0; i < deg; ++i) h.z.push_back(cplx(0.0));
    h.k *= (num / den).real();
    return h;
}

inline Zpk lp_to_bp(Zpk h, double wo, double bw) {
    const auto deg = h.p.size() - h.z.size();
    Zpk out;
    out.k = h.k * std::pow(bw, static_cast<double>(deg));
    auto expand = [&](const std::vector<cplx>& roots, std::vector<cplx>& dst) {
        for (const auto& r : roots) {
            const cplx s = r * (bw / 2.0);
            const cplx d = std::sqrt(s * s - wo * wo);
            dst.push_back(s + d);
            dst.push_back(s - d);
        }
    };
    expand(h.z, out.z);
    expand(h.p, out.p);
    for (std::size_t i = 0; i < deg; ++i) out.z.push_back(cplx(0.0));
    return out;
}

inline Zpk lp_to_bs(Zpk h, double wo, double bw) {
    const auto deg = h.p.size() - h.z.size();
    cplx num(1.0), den(1.0);
    for (const auto& z : h.z) num *= -z;
    for (const auto& p : h.p) den *= -p;
    Zpk out;
    out.k = h.k * (num / den).real();
    auto expand = [&](const std::vector<cplx>& roots, std::vector<cplx>& dst) {
        for (const auto& r : roots) {
            const cplx s = (bw / 2.0) / r;
            const cplx d = std::sqrt(s * s - wo * wo);
            dst.push_back(s + d);
            dst.push_back(s - d);
        }
    };
    expand(h.z, out.z);
    expand(h.p, out.p);
    const cplx jwo(0.0, wo);
    for (std::size_t i = 0; i < deg; ++i) {
        out.z.push_back(jwo);
        out.z.push_back(-jwo);
    }
    return out;
}

/// Bilinear transform z = (fs2 + s) / (fs2 - s), fs2 = 2 * fs.
inline Zpk bilinear(Zpk h, double fs) {
    const double fs2 = 2.0 * fs;
    const auto deg = h.p.size() - h.z.size();
    cplx num(1.0), den(1.0);
    for (const auto& z : h.z) num *= fs2 - z;
    for (const auto& p : h.p) den *= fs2 - p;
    for (auto& z : h.z) z = (fs2 + z) / (fs2 - z);
    for (auto& p : h.p) p = (fs2 + p) / (fs2 - p);
    for (std::size_t i = 0; i < deg; ++i) h.z.push_back(cplx(-1.0));
    h.k *= (num / den).real();
    return h;
}

inline std::vector<double> poly_from_roots(const std::vector<cplx>& roots) {
    std::vector<cplx> c{cplx(1.0)};
    for (const auto& r : roots) {
        c.push_back(cplx(0.0));
        for (std::size_t i = c.size() - 1; i > 0; --i) c[i] -= r * c[i - 1];
    }
    std::vector<double> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
    return out;
}

} // namespace detail

struct EllipOrder {
    std::size_t order = 0;
    /// Normalized frequencies (fraction of Nyquist) the design is placed at.
    std::vector<double> natural_frequencies;
};

namespace detail {

/// Prewarped analog frequency for the fs=2 bilinear convention.
inline double warp(double w_norm) {
    return 4.0 * std::tan(std::numbers::pi * w_norm / 2.0);
}

/// Analog low-pass selectivity 1/k reached by the spec's stopband.
inline double analog_nat(const FilterSpec& spec) {
    std::vector<double> pb, sb;
    for (double e : spec.passband_edges) pb.push_back(warp(e));
    for (double e : spec.stopband_edges) sb.push_back(warp(e));
    switch (spec.band) {
        case BandKind::lowpass:
            return sb[0] / pb[0];
        case BandKind::highpass:
            return pb[0] / sb[0];
        case BandKind::bandpass: {
            const double n0 = std::abs((sb[0] * sb[0] - pb[0] * pb[1]) /
                                       (sb[0] * (pb[0] - pb[1])));
            const double n1 = std::abs((sb[1] * sb[1] - pb[0] * pb[1]) /
                                       (sb[1] * (pb[0] - pb[1])));
            return std::min(n0, n1);
        }
        case BandKind::bandstop: {
            const double n0 = std::abs(sb[0] * (pb[0] - pb[1]) /
                                       (sb[0] * sb[0] - pb[0] * pb[1]));
            const double n1 = std::abs(sb[1] * (pb[0] - pb[1]) /
                                       (sb[1] * sb[1] - pb[0] * pb[1]));
            return std::min(n0, n1);
        }
    }
    throw design_failure("analog_nat: unknown band");
}

} // namespace detail

/// Smallest elliptic order meeting the spec, from the degree equation
/// n >= [K(k) K'(k1)] / [K'(k) K(k1)] with selectivity k and
/// discrimination k1.
inline EllipOrder ellip_min_order(const FilterSpec& spec) {
    spec.validate();
    const double nat = detail::analog_nat(spec);
    if (!(nat > 1.0))
        throw design_failure("ellip_min_order: degenerate transition band");
    const double k = 1.0 / nat;
    const double gp = std::pow(10.0, 0.1 * spec.passband_ripple_db);
    const double gs = std::pow(10.0, 0.1 * spec.stopband_attenuation_db);
    const double k1 = std::sqrt((gp - 1.0) / (gs - 1.0));
    const double ratio = (detail::ellip_K(k) * detail::ellip_Kc(k1)) /
                         (detail::ellip_Kc(k) * detail::ellip_K(k1));
    EllipOrder out;
    out.order = static_cast<std::size_t>(std::max(1.0, std::ceil(ratio - 1e-12)));
    out.natural_frequencies = spec.passband_edges;
    return out;
}

/// Full elliptic design: analog low-pass prototype, band transformation at
/// the passband edges, bilinear transform with prewarping.
inline TransferFunction design_elliptic(const FilterSpec& spec) {
    spec.validate();
    for (std::size_t i = 0; i < spec.passband_edges.size(); ++i)
        if (std::abs(spec.passband_edges[i] - spec.stopband_edges[i]) < 1e-6)
            throw design_failure("design_elliptic: transition band narrower than 1e-6");

    const EllipOrder ord = ellip_min_order(spec);
    detail::Zpk proto = detail::ellip_prototype(
        ord.order, spec.passband_ripple_db, spec.stopband_attenuation_db);

    std::vector<double> pb;
    for (double e : spec.passband_edges) pb.push_back(detail::warp(e));
    detail::Zpk shaped;
    switch (spec.band) {
        case BandKind::lowpass:
            shaped = detail::lp_to_lp(std::move(proto), pb[0]);
            break;
        case BandKind::highpass:
            shaped = detail::lp_to_hp(std::move(proto), pb[0]);
            break;
        case BandKind::bandpass:
            shaped = detail::lp_to_bp(std::move(proto), std::sqrt(pb[0] * pb[1]),
                                      pb[1] - pb[0]);
            break;
        case BandKind::bandstop:
            shaped = detail::lp_to_bs(std::move(proto), std::sqrt(pb[0] * pb[1]),
                                      pb[1] - pb[0]);
            break;
    }
    detail::Zpk dig = detail::bilinear(std::move(shaped), 2.0);

    std::vector<double> b = detail::poly_from_roots(dig.z);
    for (double& v : b) v *= dig.k;
    std::vector<double> a = detail::poly_from_roots(dig.p);
    TransferFunction tf(std::move(b), std::move(a));
    if (!stability(tf).stable)
        throw design_failure("design_elliptic: produced an unstable filter");
    return tf;
}

} // namespace armasin

#endif
