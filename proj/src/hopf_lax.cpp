#include "vvrate/hopf_lax.hpp"

#include <cmath>
#include <stdexcept>

#include "vvrate/search.hpp"

namespace vvrate {

namespace {

void check_pure_quadratic(const ProblemSpec& problem) {
    if (problem.hamiltonian.kind != HamiltonianKind::PureQuadratic)
        throw std::invalid_argument("hopf_lax: pure quadratic Hamiltonian required");
}

// inf over |y-x| <= 2 L tau of f(y) + |y-x|^2/(2 tau).
detail::MinimizeResult proximal_minimize(const detail::Objective& f, const Vec& x, double lip,
                                         double tau, double tol) {
    auto obj = [&](const Vec& y) { return f(y) + dist_sq(y, x) / (2.0 * tau); };
    const double radius = 2.0 * lip * tau;
    const double spacing = lip * tau / 32.0;
    const double step_min = tol * tau;
    // Any coarse node this close to optimal may hide a distinct basin: the
    // objective moves by at most (L + 2L) * spacing between neighbours.
    const double window = 3.0 * lip * spacing;
    return detail::minimize_on_ball(obj, x, radius, spacing, step_min, window, tol, 2.0 * tol);
}

}  // namespace

HopfLaxResult eval_hopf_lax(const ProblemSpec& problem, double t, const Vec& x, double tol) {
    problem.validate();
    check_pure_quadratic(problem);
    if (static_cast<int>(x.size()) != problem.dimension)
        throw std::invalid_argument("eval_hopf_lax: point dimension mismatch");
    if (t > problem.horizon) throw std::invalid_argument("eval_hopf_lax: t > T");
    if (!(tol > 0.0)) throw std::invalid_argument("eval_hopf_lax: tol must be positive");

    HopfLaxResult res;
    res.tolerance_used = tol;
    const double tau = problem.horizon - t;
    const double lip = problem.terminal.lipschitz_const();
    if (tau == 0.0 || lip == 0.0) {
        res.value = problem.terminal_value(x);
        res.minimizers = {x};
        return res;
    }
    auto g = [&](const Vec& y) { return problem.terminal_value(y); };
    auto m = proximal_minimize(g, x, lip, tau, tol);
    res.value = m.value;
    res.minimizers = std::move(m.minimizers);
    return res;
}

double semigroup_residual(const ProblemSpec& problem, double t, double s, const Vec& x,
                          double tol) {
    problem.validate();
    check_pure_quadratic(problem);
    if (!(t < s && s < problem.horizon))
        throw std::invalid_argument("semigroup_residual: t < s < T required");

    const double direct = eval_hopf_lax(problem, t, x, tol).value;
    const double lip = problem.terminal.lipschitz_const();
    auto inner = [&](const Vec& y) { return eval_hopf_lax(problem, s, y, tol).value; };
    const double tau = s - t;
    const double relayed = lip == 0.0
                               ? inner(x)
                               : proximal_minimize(inner, x, lip, tau, tol).value;
    return std::abs(direct - relayed);
}

}  // namespace vvrate
