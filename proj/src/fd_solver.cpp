#include "vvrate/fd_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vvrate/kernels.hpp"

namespace vvrate {

std::size_t GridSpec::node_count() const {
    const std::size_t n = static_cast<std::size_t>(nodes_per_axis());
    return dimension == 1 ? n : n * n;
}

void GridSpec::validate() const {
    if (dimension != 1 && dimension != 2)
        throw std::invalid_argument("GridSpec: dimension must be 1 or 2");
    if (cells_per_axis < 16) throw std::invalid_argument("GridSpec: cells_per_axis >= 16 required");
    if (!(half_width > 0.0)) throw std::invalid_argument("GridSpec: half_width must be positive");
}

double SolutionField::max_difference_quotient() const {
    const int n = grid.nodes_per_axis();
    const double h = grid.spacing();
    double lip = 0.0;
    if (grid.dimension == 1) {
        for (int i = 0; i + 1 < n; ++i) lip = std::max(lip, std::abs(at(i + 1) - at(i)) / h);
        return lip;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i + 1 < n) lip = std::max(lip, std::abs(at(i + 1, j) - at(i, j)) / h);
            if (j + 1 < n) lip = std::max(lip, std::abs(at(i, j + 1) - at(i, j)) / h);
        }
    return lip;
}

namespace {

double drift_sup(const ProblemSpec& problem, const GridSpec& grid) {
    if (problem.hamiltonian.kind != HamiltonianKind::QuadraticWithDrift) return 0.0;
    return problem.hamiltonian.drift->sup_norm_on_cube(grid.half_width);
}

// max |grad_p H| over |p| <= L on the grid domain: |p - b(x)| <= L + |b|_inf.
double speed_bound(const ProblemSpec& problem, const GridSpec& grid) {
    const double lip = problem.terminal.lipschitz_const();
    double growth = 0.0;
    if (problem.hamiltonian.kind == HamiltonianKind::QuadraticWithDrift)
        growth = problem.hamiltonian.drift->first_derivative_bound();
    return lip * std::exp(growth * problem.horizon) + drift_sup(problem, grid);
}

std::vector<double> terminal_nodes(const ProblemSpec& problem, const GridSpec& grid) {
    const int n = grid.nodes_per_axis();
    std::vector<double> u(grid.node_count());
    if (grid.dimension == 1) {
        for (int i = 0; i < n; ++i) u[static_cast<std::size_t>(i)] = problem.terminal_value({grid.node_coord(i)});
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                u[static_cast<std::size_t>(i) * n + j] =
                    problem.terminal_value({grid.node_coord(i), grid.node_coord(j)});
    }
    return u;
}

double max_gradient_quotient(const SolutionField& f) { return f.max_difference_quotient(); }

}  // namespace

double domain_padding(const ProblemSpec& problem, const GridSpec& grid) {
    return speed_bound(problem, grid) * problem.horizon;
}

std::vector<SolutionField> solve_viscous(const ProblemSpec& problem, double eps,
                                         const GridSpec& grid, const std::vector<double>& times) {
    problem.validate();
    grid.validate();
    if (eps < 0.0) throw std::invalid_argument("solve_viscous: eps >= 0 required");
    if (problem.dimension != grid.dimension)
        throw std::invalid_argument("solve_viscous: grid/problem dimension mismatch");
    for (double t : times)
        if (t < 0.0 || t > problem.horizon)
            throw std::invalid_argument("solve_viscous: output times must lie in [0, T]");

    const double padding = domain_padding(problem, grid);
    if (grid.half_width <= padding)
        throw std::invalid_argument(
            "solve_viscous: grid too small for the domain of dependence; need half_width > " +
            std::to_string(padding));

    std::vector<double> wanted = times;
    std::sort(wanted.begin(), wanted.end(), std::greater<double>());

    const int d = grid.dimension;
    const double dx = grid.spacing();
    const double lip = problem.terminal.lipschitz_const();
    const double bsup = drift_sup(problem, grid);
    const auto& ham = problem.hamiltonian;
    auto hvalue = [&](const double* x, const double* p) {
        double h = 0.0;
        if (ham.kind == HamiltonianKind::QuadraticWithDrift) {
            Vec xv(x, x + d);
            const Vec b = ham.drift->eval(xv);
            for (int a = 0; a < d; ++a) h -= b[static_cast<std::size_t>(a)] * p[a];
        }
        for (int a = 0; a < d; ++a) h += 0.5 * p[a] * p[a];
        return h;
    };

    SolutionField cur;
    cur.grid = grid;
    cur.eps = eps;
    cur.time = problem.horizon;
    cur.values = terminal_nodes(problem, grid);
    std::vector<double> scratch(cur.values.size());

    std::vector<SolutionField> out;
    std::size_t next = 0;
    while (next < wanted.size() && wanted[next] >= problem.horizon) {
        SolutionField f = cur;
        f.time = wanted[next++];
        out.push_back(std::move(f));
    }

    const double t_end = wanted.empty() ? problem.horizon : wanted.back();
    double t = problem.horizon;
    SolutionField prev = cur;
    while (t > t_end && next < wanted.size()) {
        // Dissipation floored at L + |b|_inf so the scheme stays monotone.
        const double sigma = std::max(max_gradient_quotient(cur) + bsup, lip + bsup);
        double dt = 0.4 * std::min(dx / (d * sigma + 1e-30), dx * dx / (d * eps + 1e-30));
        dt = std::min(dt, t - t_end);

        kernels::HjbStepParams prm;
        prm.dt = dt;
        prm.dx = dx;
        prm.eps = eps;
        prm.sigma = sigma;
        prm.x0 = -grid.half_width;
        prm.n = grid.nodes_per_axis();
        prm.dim = d;
        prev = cur;
        kernels::hjb_step_omp(std::span<const double>(prev.values), std::span<double>(scratch),
                              prm, hvalue);
        cur.values.swap(scratch);
        cur.time = t - dt;
        t = cur.time;

        while (next < wanted.size() && wanted[next] >= t) {
            const double target = wanted[next++];
            const double w = (prev.time - target) / (prev.time - cur.time);
            SolutionField f = cur;
            f.time = target;
            for (std::size_t i = 0; i < f.values.size(); ++i)
                f.values[i] = (1.0 - w) * prev.values[i] + w * cur.values[i];
            out.push_back(std::move(f));
        }
    }

    // restore ascending caller order
    std::sort(out.begin(), out.end(),
              [](const SolutionField& a, const SolutionField& b) { return a.time < b.time; });
    std::vector<SolutionField> ordered;
    ordered.reserve(times.size());
    for (double target : times) {
        for (auto& f : out)
            if (f.time == target) {
                ordered.push_back(f);
                break;
            }
    }
    return ordered;
}

std::vector<SolutionField> solve_inviscid(const ProblemSpec& problem, const GridSpec& grid,
                                          const std::vector<double>& times) {
    return solve_viscous(problem, 0.0, grid, times);
}

SolutionField subtract_restricted(const ProblemSpec& problem, const SolutionField& viscous,
                                  const SolutionField& inviscid) {
    const GridSpec& grid = viscous.grid;
    if (grid.dimension != inviscid.grid.dimension ||
        grid.cells_per_axis != inviscid.grid.cells_per_axis ||
        grid.half_width != inviscid.grid.half_width)
        throw std::invalid_argument("discrete_gap: mismatched grids");

    const double dx = grid.spacing();
    const double padding = domain_padding(problem, grid);
    const int pad_cells = static_cast<int>(std::ceil(padding / dx));
    const int roi_half_cells = grid.cells_per_axis / 2 - pad_cells;
    if (roi_half_cells < 1)
        throw std::invalid_argument("discrete_gap: padding leaves no interior region");

    GridSpec sub = grid;
    sub.half_width = roi_half_cells * dx;
    sub.cells_per_axis = 2 * roi_half_cells;

    SolutionField gap;
    gap.time = viscous.time;
    gap.grid = sub;
    gap.eps = viscous.eps;
    gap.values.resize(sub.node_count());
    const int off = grid.cells_per_axis / 2 - roi_half_cells;
    const int n = grid.nodes_per_axis();
    const int m = sub.nodes_per_axis();
    if (grid.dimension == 1) {
        for (int i = 0; i < m; ++i)
            gap.values[static_cast<std::size_t>(i)] =
                viscous.values[static_cast<std::size_t>(i + off)] -
                inviscid.values[static_cast<std::size_t>(i + off)];
    } else {
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                gap.values[static_cast<std::size_t>(i) * m + j] =
                    viscous.values[static_cast<std::size_t>(i + off) * n + (j + off)] -
                    inviscid.values[static_cast<std::size_t>(i + off) * n + (j + off)];
    }
    return gap;
}

SolutionField discrete_gap(const ProblemSpec& problem, double eps, const GridSpec& grid, double t) {
    auto viscous = solve_viscous(problem, eps, grid, {t});
    auto inviscid = solve_inviscid(problem, grid, {t});
    return subtract_restricted(problem, viscous.at(0), inviscid.at(0));
}

}  // namespace vvrate
