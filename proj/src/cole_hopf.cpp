#include "vvrate/cole_hopf.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "vvrate/kernels.hpp"
#include "vvrate/special.hpp"

namespace vvrate {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;  // log(2*pi)

void check_common(const ProblemSpec& problem, double eps, double t) {
    problem.validate();
    if (problem.hamiltonian.kind != HamiltonianKind::PureQuadratic)
        throw std::invalid_argument("cole_hopf: pure quadratic Hamiltonian required");
    if (!(eps > 0.0)) throw std::invalid_argument("cole_hopf: eps must be positive");
    if (t > problem.horizon) throw std::invalid_argument("cole_hopf: t > T");
}

struct TensorGrid {
    std::vector<double> nodes;       // per-axis z nodes, uniform
    std::vector<double> log_weight;  // per-axis log trapezoid weight
    int n = 0;
    int d = 1;
    std::size_t total() const { return static_cast<std::size_t>(std::pow(double(n), double(d))); }
};

TensorGrid make_grid(int n, int d, double rz) {
    if (n < 8) throw std::invalid_argument("cole_hopf: nodes_per_axis >= 8 required");
    TensorGrid g;
    g.n = n;
    g.d = d;
    const double h = 2.0 * rz / (n - 1);
    g.nodes.resize(static_cast<std::size_t>(n));
    g.log_weight.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        g.nodes[static_cast<std::size_t>(i)] = -rz + i * h;
        const double w = (i == 0 || i == n - 1) ? 0.5 * h : h;
        g.log_weight[static_cast<std::size_t>(i)] = std::log(w);
    }
    return g;
}

// Fills A[i] = log w_i - g(x + scale z_i)/eps - |z_i|^2/2 over the tensor grid.
void fill_exponents(const ProblemSpec& problem, const TensorGrid& g, const Vec& x, double scale,
                    double eps, std::vector<double>& a) {
    const std::size_t total = g.total();
    a.resize(total);
    const int n = g.n, d = g.d;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(total); ++idx) {
        Vec y(static_cast<std::size_t>(d));
        std::size_t rem = static_cast<std::size_t>(idx);
        double z2 = 0.0, logw = 0.0;
        for (int i = 0; i < d; ++i) {
            const std::size_t k = rem % static_cast<std::size_t>(n);
            rem /= static_cast<std::size_t>(n);
            const double z = g.nodes[k];
            z2 += z * z;
            logw += g.log_weight[k];
            y[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + scale * z;
        }
        a[static_cast<std::size_t>(idx)] = logw - problem.terminal_value(y) / eps - 0.5 * z2;
    }
}

// log of sum_i w_i exp(E_i) over the grid in the z variable.
double log_integral_z(const ProblemSpec& problem, const TensorGrid& g, const Vec& x, double scale,
                      double eps) {
    std::vector<double> a;
    fill_exponents(problem, g, x, scale, eps, a);
    const double m = kernels::max_omp(a);
    if (!std::isfinite(m)) return -std::numeric_limits<double>::infinity();
    return m + std::log(kernels::sumexp_omp(a, m));
}

double truncation_radius(const ProblemSpec& problem, const QuadratureSpec& quad, double eps,
                         double tau) {
    const double lip = problem.terminal.lipschitz_const();
    return quad.truncation_radius_multiplier + lip * std::sqrt(tau / eps);
}

ViscousValue tensor_value(const ProblemSpec& problem, double eps, double t, const Vec& x,
                          const QuadratureSpec& quad) {
    const int d = problem.dimension;
    if (d > 3)
        throw std::invalid_argument("cole_hopf: tensor quadrature limited to dimension <= 3");
    const double tau = problem.horizon - t;
    const double rz = truncation_radius(problem, quad, eps, tau);
    const double scale = std::sqrt(eps * tau);

    auto value_at = [&](int n) {
        const TensorGrid g = make_grid(n, d, rz);
        // log \int exp[-g(y)/eps - |y-x|^2/(2 eps tau)] dy
        //   = (d/2) log(eps tau) + log \int_z
        return 0.5 * d * std::log(eps * tau) + log_integral_z(problem, g, x, scale, eps);
    };

    ViscousValue out;
    out.log_partition = value_at(quad.nodes_per_axis);
    out.value = 0.5 * eps * d * std::log(2.0 * M_PI * eps * tau) - eps * out.log_partition;
    const double coarse =
        0.5 * eps * d * std::log(2.0 * M_PI * eps * tau) - eps * value_at(quad.nodes_per_axis / 2);
    out.est_quadrature_error = std::max(std::abs(out.value - coarse), 1e-14);
    return out;
}

// log C_k, C_k = k pi^{k/2} / Gamma(k/2+1): k times the unit-ball measure.
double log_cone_shell_const(int k) {
    return std::log(double(k)) + 0.5 * k * std::log(M_PI) - log_gamma(0.5 * k + 1.0);
}

// log J with J = int_{-a}^{inf} e^{-s^2/2} (sqrt(eps tau) s + tau)^{k-1} ds,
// expanded into truncated Gaussian moments (all terms nonnegative).
double log_radial_profile_moments(int k, double eps, double tau) {
    const double a = std::sqrt(tau / eps);
    const auto moments = truncated_gaussian_moments(a, k - 1);
    double m = -std::numeric_limits<double>::infinity();
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j <= k - 1; ++j) {
        const double mom = moments[static_cast<std::size_t>(j)];
        if (mom <= 0.0) continue;
        const double lt = log_binomial(k - 1, j) + 0.5 * j * std::log(eps * tau) +
                          (k - 1 - j) * std::log(tau) + std::log(mom);
        terms.push_back(lt);
        m = std::max(m, lt);
    }
    double s = 0.0;
    for (double lt : terms) s += std::exp(lt - m);
    return m + std::log(s);
}

// Same J by log-sum-exp trapezoid with `nodes` points, for the error estimate.
double log_radial_profile_trapezoid(int k, double eps, double tau, int nodes) {
    const double a = std::sqrt(tau / eps);
    const double lo = -std::min(a, 45.0);
    const double hi = 45.0;
    const double h = (hi - lo) / (nodes - 1);
    std::vector<double> e(static_cast<std::size_t>(nodes));
    for (int i = 0; i < nodes; ++i) {
        const double s = lo + i * h;
        const double arg = std::sqrt(eps * tau) * s + tau;
        double v;
        if (arg <= 0.0)
            v = k > 1 ? -std::numeric_limits<double>::infinity() : -0.5 * s * s;
        else
            v = -0.5 * s * s + (k - 1) * std::log(arg);
        const double w = (i == 0 || i == nodes - 1) ? 0.5 * h : h;
        e[static_cast<std::size_t>(i)] = v + std::log(w);
    }
    const double m = kernels::max_serial(e);
    return m + std::log(kernels::sumexp_serial(e, m));
}

}  // namespace

ViscousValue eval_cole_hopf_radial(const ProblemSpec& problem, double eps, double tau, int nodes) {
    check_common(problem, eps, problem.horizon - tau);
    if (problem.terminal.kind != TerminalKind::ConeK)
        throw std::invalid_argument("eval_cole_hopf_radial: cone terminal data required");
    const int k = problem.terminal.k;
    if (k < 1 || k > 64) throw std::invalid_argument("eval_cole_hopf_radial: 1 <= k <= 64 required");
    if (!(tau > 0.0)) throw std::invalid_argument("eval_cole_hopf_radial: tau must be positive");
    if (nodes < 16) throw std::invalid_argument("eval_cole_hopf_radial: nodes >= 16 required");

    const double log_j = log_radial_profile_moments(k, eps, tau);
    // log \int_{R^k} exp[(|y| - |y|^2/(2 tau))/eps] dy
    //   = tau/(2 eps) + log C_k + (1/2) log(eps tau) + log J
    ViscousValue out;
    out.log_partition =
        0.5 * tau / eps + log_cone_shell_const(k) + 0.5 * std::log(eps * tau) + log_j;
    out.value = 0.5 * eps * k * std::log(2.0 * M_PI * eps * tau) - eps * out.log_partition;

    const double log_j_quad = log_radial_profile_trapezoid(k, eps, tau, nodes);
    out.est_quadrature_error = std::max(eps * std::abs(log_j - log_j_quad), 1e-16);
    return out;
}

double cole_hopf_radial_gap(const ProblemSpec& problem, double eps, double tau, int nodes) {
    const ViscousValue v = eval_cole_hopf_radial(problem, eps, tau, nodes);
    const int k = problem.terminal.k;
    const double log_j = v.log_partition - 0.5 * tau / eps - log_cone_shell_const(k) -
                         0.5 * std::log(eps * tau);
    // gap = value + tau/2, with the tau/2 cancellation done symbolically
    return eps * (0.5 * k * std::log(2.0 * M_PI * eps * tau) - log_cone_shell_const(k) -
                  0.5 * std::log(eps * tau) - log_j);
}

ViscousValue eval_cole_hopf(const ProblemSpec& problem, double eps, double t, const Vec& x,
                            const QuadratureSpec& quad) {
    check_common(problem, eps, t);
    if (static_cast<int>(x.size()) != problem.dimension)
        throw std::invalid_argument("eval_cole_hopf: point dimension mismatch");
    if (t == problem.horizon) {
        ViscousValue out;
        out.value = problem.terminal_value(x);
        return out;
    }
    if (quad.mode == QuadratureMode::RadialCone) {
        if (problem.terminal.kind != TerminalKind::ConeK)
            throw std::invalid_argument("eval_cole_hopf: radial mode requires cone data");
        for (int i = 0; i < problem.terminal.k; ++i)
            if (x[static_cast<std::size_t>(i)] != 0.0)
                throw std::invalid_argument("eval_cole_hopf: radial mode requires P_k(x) = 0");
        // Trailing axes separate into Gaussian factors that cancel the
        // prefactor exactly, so the k-dimensional radial value is the answer.
        ProblemSpec sub = problem;
        sub.dimension = problem.terminal.k;
        ViscousValue v = eval_cole_hopf_radial(sub, eps, problem.horizon - t,
                                               std::max(quad.nodes_per_axis, 64));
        return v;
    }
    return tensor_value(problem, eps, t, x, quad);
}

Vec grad_cole_hopf(const ProblemSpec& problem, double eps, double t, const Vec& x,
                   const QuadratureSpec& quad) {
    check_common(problem, eps, t);
    if (quad.mode != QuadratureMode::TensorHermite)
        throw std::invalid_argument("grad_cole_hopf: tensor quadrature required");
    const int d = problem.dimension;
    if (d > 3) throw std::invalid_argument("grad_cole_hopf: dimension <= 3 required");
    const double tau = problem.horizon - t;
    if (tau == 0.0) throw std::invalid_argument("grad_cole_hopf: t < T required");
    const double rz = truncation_radius(problem, quad, eps, tau);
    const double scale = std::sqrt(eps * tau);
    const TensorGrid g = make_grid(quad.nodes_per_axis, d, rz);
    std::vector<double> a;
    fill_exponents(problem, g, x, scale, eps, a);
    const double m = kernels::max_omp(a);
    const double z = kernels::sumexp_omp(a, m);

    // posterior mean of y; weights exp(a - m) are shared with the partition
    Vec mean(static_cast<std::size_t>(d), 0.0);
    const int n = g.n;
    for (std::size_t idx = 0; idx < a.size(); ++idx) {
        const double w = std::exp(a[idx] - m);
        std::size_t rem = idx;
        for (int i = 0; i < d; ++i) {
            const std::size_t k = rem % static_cast<std::size_t>(n);
            rem /= static_cast<std::size_t>(n);
            mean[static_cast<std::size_t>(i)] +=
                w * (x[static_cast<std::size_t>(i)] + scale * g.nodes[k]);
        }
    }
    Vec grad(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
        grad[static_cast<std::size_t>(i)] =
            (x[static_cast<std::size_t>(i)] - mean[static_cast<std::size_t>(i)] / z) / tau;
    return grad;
}

std::vector<std::vector<double>> hessian_cole_hopf(const ProblemSpec& problem, double eps, double t,
                                                   const Vec& x, const QuadratureSpec& quad) {
    check_common(problem, eps, t);
    if (quad.mode != QuadratureMode::TensorHermite)
        throw std::invalid_argument("hessian_cole_hopf: tensor quadrature required");
    const int d = problem.dimension;
    if (d > 3) throw std::invalid_argument("hessian_cole_hopf: dimension <= 3 required");
    const double tau = problem.horizon - t;
    if (tau == 0.0) throw std::invalid_argument("hessian_cole_hopf: t < T required");
    const double rz = truncation_radius(problem, quad, eps, tau);
    const double scale = std::sqrt(eps * tau);
    const TensorGrid g = make_grid(quad.nodes_per_axis, d, rz);
    std::vector<double> a;
    fill_exponents(problem, g, x, scale, eps, a);
    const double m = kernels::max_omp(a);
    const double z = kernels::sumexp_omp(a, m);
    const int n = g.n;

    Vec mean(static_cast<std::size_t>(d), 0.0);
    for (std::size_t idx = 0; idx < a.size(); ++idx) {
        const double w = std::exp(a[idx] - m);
        std::size_t rem = idx;
        for (int i = 0; i < d; ++i) {
            const std::size_t k = rem % static_cast<std::size_t>(n);
            rem /= static_cast<std::size_t>(n);
            mean[static_cast<std::size_t>(i)] +=
                w * (x[static_cast<std::size_t>(i)] + scale * g.nodes[k]) / z;
        }
    }

    // second pass about the mean keeps the covariance PSD
    std::vector<std::vector<double>> cov(static_cast<std::size_t>(d),
                                         std::vector<double>(static_cast<std::size_t>(d), 0.0));
    Vec dy(static_cast<std::size_t>(d));
    for (std::size_t idx = 0; idx < a.size(); ++idx) {
        const double w = std::exp(a[idx] - m) / z;
        std::size_t rem = idx;
        for (int i = 0; i < d; ++i) {
            const std::size_t k = rem % static_cast<std::size_t>(n);
            rem /= static_cast<std::size_t>(n);
            dy[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + scale * g.nodes[k] -
                                              mean[static_cast<std::size_t>(i)];
        }
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                cov[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                    w * dy[static_cast<std::size_t>(i)] * dy[static_cast<std::size_t>(j)];
    }

    std::vector<std::vector<double>> hess(static_cast<std::size_t>(d),
                                          std::vector<double>(static_cast<std::size_t>(d), 0.0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double v = -cov[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] /
                       (eps * tau * tau);
            if (i == j) v += 1.0 / tau;
            hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
        }
    // exact symmetry of the record
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            const double s = 0.5 * (hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                                    hess[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
            hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
            hess[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = s;
        }
    return hess;
}

}  // namespace vvrate
