#pragma once

#include <string>
#include <vector>

#include "vvrate/problems.hpp"
#include "vvrate/vec.hpp"

namespace vvrate {

enum class GapEngine { Exact, FiniteDifference };

struct GapSample {
    double eps = 0.0;
    double t = 0.0;
    Vec x;
    double phi_eps = 0.0;
    double phi_zero = 0.0;
    double gap = 0.0;  // phi_eps - phi_zero
    std::string method;
};

struct RateFit {
    double coeff_eps_log = 0.0;  // A in gap ~ A eps log(1/eps) + B eps
    double coeff_eps = 0.0;      // B
    double residual_rms = 0.0;
    std::vector<double> eps_grid;
};

struct ExampleExpansion {
    int k = 1;
    double tau = 1.0;
    double leading = 0.0;       // (k-1)/2, coefficient of eps log(eps)
    double log_tau_coeff = 0.0; // -(k-1)/2, coefficient of eps log(T-t)
    double constant = 0.0;      // -log( k sqrt(pi) / (2^{(k-1)/2} Gamma(k/2+1)) )

    // predicted gap at viscosity eps (the o(eps) remainder dropped)
    double predict(double eps) const;
};

struct FdGapOptions {
    double half_width = 2.0;
    int cells_per_axis = 200;
};

std::vector<GapSample> gap_sweep(const ProblemSpec& problem,
                                 const std::vector<std::pair<double, Vec>>& points,
                                 const std::vector<double>& eps_grid, GapEngine engine,
                                 const FdGapOptions& fd = {});

RateFit fit_rate(const std::vector<GapSample>& samples);

ExampleExpansion example_expansion(int k, double tau);

struct BoundConstant {
    std::string name;
    double constant = 0.0;         // smallest constant making the bound hold
    std::vector<double> by_refinement;  // constant as the eps cutoff halves
    bool diverges = false;         // > 2x growth per halving across three halvings
};

struct BoundReport {
    std::vector<BoundConstant> bounds;
    bool any_failure() const;
};

BoundReport check_bounds(const ProblemSpec& problem, const std::vector<GapSample>& samples);

}  // namespace vvrate
