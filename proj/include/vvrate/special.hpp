#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace vvrate {

// Standard normal CDF.
inline double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// log Gamma, relative error well below 1e-12 for the arguments used here.
inline double log_gamma(double x) { return std::lgamma(x); }

// Truncated Gaussian moments I_m(a) = \int_{-a}^{inf} s^m e^{-s^2/2} ds,
// m = 0..mmax, via the stable recursion
//   I_0 = sqrt(2*pi) * Phi(a),  I_1 = e^{-a^2/2},
//   I_m = (m-1) I_{m-2} + (-a)^{m-1} e^{-a^2/2}.
// All I_m are nonnegative; the boundary term is computed in log scale to
// survive a ~ 1e6 without inf*0 artifacts.
inline std::vector<double> truncated_gaussian_moments(double a, int mmax) {
    if (mmax < 0) throw std::invalid_argument("truncated_gaussian_moments: mmax < 0");
    std::vector<double> moments(static_cast<std::size_t>(mmax) + 1);
    const double sqrt2pi = std::sqrt(2.0 * M_PI);
    moments[0] = sqrt2pi * norm_cdf(a);
    if (mmax >= 1) moments[1] = std::exp(-0.5 * a * a);
    for (int m = 2; m <= mmax; ++m) {
        double boundary = 0.0;
        if (a > 0.0) {
            const double logmag = (m - 1) * std::log(a) - 0.5 * a * a;
            boundary = std::exp(logmag);
            if ((m - 1) % 2 != 0) boundary = -boundary;  // (-a)^(m-1)
        } else if (a == 0.0) {
            boundary = 0.0;
        } else {
            const double logmag = (m - 1) * std::log(-a) - 0.5 * a * a;
            boundary = std::exp(logmag);
        }
        moments[static_cast<std::size_t>(m)] =
            (m - 1) * moments[static_cast<std::size_t>(m - 2)] + boundary;
        if (moments[static_cast<std::size_t>(m)] < 0.0)
            moments[static_cast<std::size_t>(m)] = 0.0;  // rounding guard, exact value is >= 0
    }
    return moments;
}

inline double log_binomial(int n, int k) {
    return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

}  // namespace vvrate
