#include "vvrate/regularize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vvrate/search.hpp"

namespace vvrate {

double sup_convolve(const ScalarField& base, double lipschitz, double delta, const Vec& x,
                    double tol) {
    if (!(delta > 0.0)) throw std::invalid_argument("sup_convolve: delta must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("sup_convolve: tol must be positive");
    if (lipschitz < 0.0) throw std::invalid_argument("sup_convolve: negative Lipschitz constant");
    const double center = base(x);
    if (lipschitz == 0.0) return center;

    auto neg_obj = [&](const Vec& y) { return -(base(y) - dist_sq(y, x) / (2.0 * delta)); };
    const double radius = 2.0 * lipschitz * delta;
    const double spacing = lipschitz * delta / 16.0;
    const double window = 3.0 * lipschitz * spacing;
    auto m = detail::minimize_on_ball(neg_obj, x, radius, spacing, tol * delta, window, tol,
                                      2.0 * tol, 256);
    return std::max(-m.value, center);
}

double semiconvexity_deficit(const ScalarField& field, double delta,
                             const std::vector<std::pair<Vec, Vec>>& samples) {
    if (!(delta > 0.0)) throw std::invalid_argument("semiconvexity_deficit: delta must be positive");
    double deficit = std::numeric_limits<double>::infinity();
    for (const auto& [x, h] : samples) {
        Vec xp = x, xm = x;
        for (std::size_t i = 0; i < x.size(); ++i) {
            xp[i] += h[i];
            xm[i] -= h[i];
        }
        const double second = field(xp) + field(xm) - 2.0 * field(x);
        deficit = std::min(deficit, second + norm2_sq(h) / delta);
    }
    return deficit;
}

}  // namespace vvrate
