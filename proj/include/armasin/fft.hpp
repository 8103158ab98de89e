#ifndef ARMASIN_FFT_HPP
#define ARMASIN_FFT_HPP

#include <bit>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace armasin::detail {

using cplx = std::complex<double>;

/// In-place iterative radix-2 Cooley-Tukey. n must be a power of two.
inline void fft_pow2(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n < 2) return;
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

/// Forward transform of arbitrary length via Bluestein's chirp-z identity,
/// falling back to plain radix-2 when n is already a power of two.
inline std::vector<cplx> fft_any(std::vector<cplx> a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0) return a;
    if (std::has_single_bit(n)) {
        fft_pow2(a, inverse);
        return a;
    }
    // Bluestein: X(k) = conj(c_k) * sum_n [x_n conj(c_n)] c_{k-n},  c_m = e^{j pi m^2 / N}
    const std::size_t m = std::bit_ceil(2 * n - 1);
    std::vector<cplx> chirp(n);
    for (std::size_t i = 0; i < n; ++i) {
        // compute i^2 mod 2n to keep the angle argument small
        const std::size_t i2 = (i * i) % (2 * n);
        const double ang = (inverse ? 1.0 : -1.0) * std::numbers::pi *
                           static_cast<double>(i2) / static_cast<double>(n);
        chirp[i] = cplx(std::cos(ang), std::sin(ang));
    }
    std::vector<cplx> u(m, cplx(0.0)), v(m, cplx(0.0));
    for (std::size_t i = 0; i < n; ++i) u[i] = a[i] * chirp[i];
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = std::conj(chirp[i]);
        if (i > 0) v[m - i] = std::conj(chirp[i]);
    }
    fft_pow2(u, false);
    fft_pow2(v, false);
    for (std::size_t i = 0; i < m; ++i) u[i] *= v[i];
    fft_pow2(u, true);
    const double scale = 1.0 / static_cast<double>(m);
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = u[i] * scale * chirp[i];
    return out;
}

} // namespace armasin::detail

#endif
