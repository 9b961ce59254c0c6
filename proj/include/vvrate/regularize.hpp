#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "vvrate/vec.hpp"

namespace vvrate {

using ScalarField = std::function<double(const Vec&)>;

// Sup-convolution sup_{|y-x| <= 2 L delta} base(y) - |x-y|^2/(2 delta).
// The search radius is exhaustive for L-Lipschitz bases; the result never
// drops below base(x).
double sup_convolve(const ScalarField& base, double lipschitz, double delta, const Vec& x,
                    double tol);

// min over samples of field(x+h) + field(x-h) - 2 field(x) + |h|^2/delta.
// Nonnegative output certifies -1/delta-semiconvexity on the sample set.
double semiconvexity_deficit(const ScalarField& field, double delta,
                             const std::vector<std::pair<Vec, Vec>>& samples);

}  // namespace vvrate
