#pragma once

#include <vector>

#include "vvrate/problems.hpp"
#include "vvrate/vec.hpp"

namespace vvrate {

enum class QuadratureMode { TensorHermite, RadialCone };

struct QuadratureSpec {
    int nodes_per_axis = 96;
    double truncation_radius_multiplier = 8.0;
    QuadratureMode mode = QuadratureMode::TensorHermite;
};

struct ViscousValue {
    double value = 0.0;          // phi^eps_t(x)
    double log_partition = 0.0;  // stabilized log of the Cole-Hopf integral
    double est_quadrature_error = 0.0;

    // Record identity: value = (eps*d/2) log(2 pi eps (T-t)) - eps * log_partition.
};

// Viscous value by the Cole-Hopf integral with log-sum-exp stabilization,
// after the substitution y = x + sqrt(eps (T-t)) z. Truncation radius
// Rz = multiplier + L sqrt((T-t)/eps) keeps the discarded tail provably
// below exp(-Rz^2/4) of the peak for L-Lipschitz data.
ViscousValue eval_cole_hopf(const ProblemSpec& problem, double eps, double t, const Vec& x,
                            const QuadratureSpec& quad);

// Radial fast path for cone data evaluated at x = 0: the trailing d-k axes
// integrate out exactly, and the remaining radial integral reduces to
// truncated Gaussian moments, so the value is exact to rounding for k <= 64.
// `nodes` sizes the independent trapezoid cross-check behind
// est_quadrature_error.
ViscousValue eval_cole_hopf_radial(const ProblemSpec& problem, double eps, double tau, int nodes);

// Gap phi^eps - phi^0 at x = 0 for cone data, formed directly from the log
// partition so the two -tau/2 leading terms never meet in floating point.
double cole_hopf_radial_gap(const ProblemSpec& problem, double eps, double tau, int nodes = 256);

// Posterior-mean gradient (x - m)/(T-t) under the Cole-Hopf density.
Vec grad_cole_hopf(const ProblemSpec& problem, double eps, double t, const Vec& x,
                   const QuadratureSpec& quad);

// Id/(T-t) - Cov/(eps (T-t)^2); the covariance is accumulated about the
// posterior mean with nonnegative weights, so it is PSD and the top
// eigenvalue never exceeds 1/(T-t).
std::vector<std::vector<double>> hessian_cole_hopf(const ProblemSpec& problem, double eps,
                                                   double t, const Vec& x,
                                                   const QuadratureSpec& quad);

}  // namespace vvrate
