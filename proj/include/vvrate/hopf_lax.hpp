#pragma once

#include <vector>

#include "vvrate/problems.hpp"
#include "vvrate/vec.hpp"

namespace vvrate {

struct HopfLaxResult {
    double value = 0.0;
    std::vector<Vec> minimizers;
    double tolerance_used = 0.0;
};

// Inviscid value phi^0_t(x) = inf_y g(y) + |y-x|^2 / (2(T-t)) for the pure
// quadratic Hamiltonian. Exhaustive coarse search over |y-x| <= 2L(T-t)
// followed by pattern-search refinement; the minimizer set is reported after
// deduplication (the cone example has a continuum of minimizers at x = 0).
HopfLaxResult eval_hopf_lax(const ProblemSpec& problem, double t, const Vec& x, double tol);

// Dynamic-programming self-consistency:
// | HL(t->T)(x) - inf_y [ HL(s->T)(y) + |y-x|^2/(2(s-t)) ] |.
double semigroup_residual(const ProblemSpec& problem, double t, double s, const Vec& x,
                          double tol = 1e-8);

}  // namespace vvrate
