#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace vvrate {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2_sq(const Vec& a) { return dot(a, a); }
inline double norm2(const Vec& a) { return std::sqrt(norm2_sq(a)); }

inline double dist_sq(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline double dist(const Vec& a, const Vec& b) { return std::sqrt(dist_sq(a, b)); }

}  // namespace vvrate
