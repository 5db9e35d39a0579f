#pragma once

#include <complex>

#include "zetaline/common.hpp"

namespace zetaline::detail {

/// log Gamma(z) for complex z, Lanczos approximation (g = 7, 9 terms).
/// Accurate to ~1e-13 relative over the arguments used here.
inline std::complex<double> log_gamma(std::complex<double> z) {
    static const double c[9] = {
        0.99999999999980993,    676.5203681218851,   -1259.1392167224028,
        771.32342877765313,     -176.61502916214059, 12.507343278686905,
        -0.13857109526572012,   9.9843695780195716e-6,
        1.5056327351493116e-7};
    const double log_sqrt_two_pi = 0.91893853320467274178;

    if (z.real() < 0.5) {
        // reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
        return std::log(kPi / std::sin(kPi * z)) - log_gamma(1.0 - z);
    }
    z -= 1.0;
    std::complex<double> x = c[0];
    for (int k = 1; k < 9; ++k) x += c[k] / (z + static_cast<double>(k));
    std::complex<double> t = z + 7.5;
    return log_sqrt_two_pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace zetaline::detail
