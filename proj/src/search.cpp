#include "vvrate/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vvrate::detail {

double pattern_search(const Objective& obj, Vec& y, double start_step, double step_min) {
    double best = obj(y);
    double step = start_step;
    const std::size_t d = y.size();
    while (step >= step_min) {
        bool improved = false;
        for (std::size_t i = 0; i < d; ++i) {
            for (double sign : {+1.0, -1.0}) {
                Vec trial = y;
                trial[i] += sign * step;
                double v = obj(trial);
                // Greedy ray extension along an improving direction.
                while (v < best) {
                    best = v;
                    y = trial;
                    improved = true;
                    trial[i] += sign * step;
                    v = obj(trial);
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return best;
}

MinimizeResult minimize_on_ball(const Objective& obj, const Vec& center, double radius,
                                double coarse_spacing, double step_min, double value_window,
                                double dedup_radius, double value_slack,
                                std::size_t max_candidates) {
    const std::size_t d = center.size();
    if (d == 0 || d > 3) throw std::invalid_argument("minimize_on_ball: dimension must be 1..3");
    MinimizeResult out;
    if (!(radius > 0.0) || !(coarse_spacing > 0.0)) {
        out.value = obj(center);
        out.minimizers = {center};
        return out;
    }

    const int half = std::max(1, static_cast<int>(std::ceil(radius / coarse_spacing)));
    const int n = 2 * half + 1;

    struct Node {
        double value;
        Vec point;
    };
    std::vector<Node> nodes;
    nodes.reserve(64);
    double best = obj(center);
    nodes.push_back({best, center});

    Vec y(d, 0.0);
    const long total = static_cast<long>(std::pow(double(n), double(d)));
    for (long idx = 0; idx < total; ++idx) {
        long rem = idx;
        for (std::size_t i = 0; i < d; ++i) {
            const int off = static_cast<int>(rem % n) - half;
            rem /= n;
            y[i] = center[i] + off * coarse_spacing;
        }
        const double v = obj(y);
        if (v < best) best = v;
        if (v <= best + value_window) nodes.push_back({v, y});
    }

    // Keep the most promising candidates.
    std::vector<Node> cands;
    for (auto& nd : nodes)
        if (nd.value <= best + value_window) cands.push_back(std::move(nd));
    std::sort(cands.begin(), cands.end(),
              [](const Node& a, const Node& b) { return a.value < b.value; });
    if (cands.size() > max_candidates) cands.resize(max_candidates);

    double refined_best = best;
    for (auto& c : cands) {
        c.value = pattern_search(obj, c.point, coarse_spacing, step_min);
        refined_best = std::min(refined_best, c.value);
    }

    out.value = refined_best;
    for (const auto& c : cands) {
        if (c.value > refined_best + value_slack) continue;
        bool dup = false;
        for (const auto& m : out.minimizers)
            if (dist(m, c.point) <= dedup_radius) {
                dup = true;
                break;
            }
        if (!dup) out.minimizers.push_back(c.point);
    }
    if (out.minimizers.empty()) out.minimizers.push_back(center);
    return out;
}

}  // namespace vvrate::detail
