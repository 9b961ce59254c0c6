#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "vvrate/vec.hpp"

namespace vvrate::detail {

using Objective = std::function<double(const Vec&)>;

struct MinimizeResult {
    double value = 0.0;
    std::vector<Vec> minimizers;  // refined, deduplicated at dedup_radius
};

// Exhaustive coarse grid over the cube [center-radius, center+radius]^d,
// pattern-search refinement of every near-optimal coarse node (shrinking
// steps down to step_min), then deduplication. value_window selects the
// coarse nodes worth refining; dedup_radius and value_slack control the
// reported minimizer set.
MinimizeResult minimize_on_ball(const Objective& obj, const Vec& center, double radius,
                                double coarse_spacing, double step_min, double value_window,
                                double dedup_radius, double value_slack,
                                std::size_t max_candidates = 4096);

// Single-point pattern search; returns the improved value, updates y in place.
double pattern_search(const Objective& obj, Vec& y, double start_step, double step_min);

}  // namespace vvrate::detail
