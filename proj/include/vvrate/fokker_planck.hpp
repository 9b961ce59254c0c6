#pragma once

#include <functional>
#include <vector>

#include "vvrate/fd_solver.hpp"
#include "vvrate/problems.hpp"
#include "vvrate/vec.hpp"

namespace vvrate {

// Drift b^{eps,delta}_s(x); for the quadratic family this is
// -b(x) + (grad phi^eps_s(x) + grad phi^{0,delta}_s(x))/2.
// component(s, x, axis) avoids per-face allocations in the flux kernel.
struct DriftField {
    std::function<double(double s, const double* x, int axis)> component;
    double bound = 0.0;  // sup norm, <= L + |b|_inf

    Vec eval(double s, const Vec& x) const;

    static DriftField zero();
    static DriftField constant(Vec v);
};

// Midpoint drift tabulated on a (time, space) lattice from the Cole-Hopf
// posterior gradient and the sup-convolved Hopf-Lax gradient, then bilinearly
// interpolated; keeps the Fokker-Planck march from re-running the evaluators
// at every node and step. 1-D only.
DriftField make_solver_drift(const ProblemSpec& problem, double eps, double delta,
                             const GridSpec& grid, int time_samples);

struct EntropyTrace {
    double eps = 0.0;
    double start_time = 0.0;  // the true initial time t of the Dirac datum
    std::vector<double> times;
    std::vector<double> entropy;  // int log(mu) dmu
    std::vector<double> fisher;   // int |grad log mu|^2 dmu
    std::vector<double> mass;
    std::vector<double> div_drift_integral;  // running int int div(b) dmu ds
    std::vector<double> laplacian_integral;  // running (1/2) int int lap(phi) dmu ds
    std::vector<double> fisher_integral;     // running int int |grad log mu|^2 dmu ds

    std::size_t index_of(double s) const;  // throws on unrecorded times
};

using TimeField = std::function<double(double s, const Vec& x)>;

// Explicit conservative finite-volume march of
//   d/ds mu = div(mu b) + eps/2 lap(mu),  mu_t = delta_x,
// the Dirac datum mollified into the matching heat kernel at t + t_burn.
// The march always records the horizon. laplacian_field, when provided, is
// accumulated into laplacian_integral along the flow (the intermediate
// densities are not retained, so the field must be known during the solve).
EntropyTrace solve_fokker_planck(const DriftField& drift, double eps, double t, const Vec& x,
                                 const GridSpec& grid, const std::vector<double>& record_times,
                                 double horizon, const TimeField& laplacian_field = {});

double entropy_identity_residual(const EntropyTrace& trace, double s1, double s2);

struct EntropyBoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

// Regularising bound entropy(t+tau) <= -(d/2) log(2 pi eps tau) + tau L^2/(2 eps).
EntropyBoundCheck check_entropy_bound(const EntropyTrace& trace, double tau, double lipschitz,
                                      int dimension);

// Accumulated (1/2) int int lap(phi) dmu ds from t+tau to the final time.
double integrated_laplacian(const EntropyTrace& trace, double tau);

}  // namespace vvrate
