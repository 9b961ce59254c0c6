#include "vvrate/fokker_planck.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "vvrate/cole_hopf.hpp"
#include "vvrate/hopf_lax.hpp"
#include "vvrate/kernels.hpp"
#include "vvrate/regularize.hpp"

namespace vvrate {

Vec DriftField::eval(double s, const Vec& x) const {
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = component(s, x.data(), static_cast<int>(i));
    return out;
}

DriftField DriftField::zero() {
    DriftField f;
    f.component = [](double, const double*, int) { return 0.0; };
    f.bound = 0.0;
    return f;
}

DriftField DriftField::constant(Vec v) {
    DriftField f;
    f.bound = norm2(v);
    f.component = [v = std::move(v)](double, const double*, int axis) {
        return v[static_cast<std::size_t>(axis)];
    };
    return f;
}

DriftField make_solver_drift(const ProblemSpec& problem, double eps, double delta,
                             const GridSpec& grid, int time_samples) {
    problem.validate();
    grid.validate();
    if (grid.dimension != 1 || problem.dimension != 1)
        throw std::invalid_argument("make_solver_drift: 1-D only");
    if (time_samples < 2) throw std::invalid_argument("make_solver_drift: time_samples >= 2");

    const double T = problem.horizon;
    const double lip = problem.terminal.lipschitz_const();
    const int n = grid.nodes_per_axis();
    const double hl_tol = 1e-7;
    const double fd_step = 1e-4;

    auto table = std::make_shared<std::vector<double>>(
        static_cast<std::size_t>(time_samples) * n);
    auto stimes = std::make_shared<std::vector<double>>(static_cast<std::size_t>(time_samples));
    for (int i = 0; i < time_samples; ++i)
        (*stimes)[static_cast<std::size_t>(i)] = T * i / (time_samples - 1);

    QuadratureSpec quad;
    quad.nodes_per_axis = 128;
    for (int si = 0; si < time_samples; ++si) {
        // the terminal slice uses a slightly interior time; gradients stay bounded
        const double s = std::min((*stimes)[static_cast<std::size_t>(si)], T - 1e-3);
        auto phi0 = [&](const Vec& y) { return eval_hopf_lax(problem, s, y, hl_tol).value; };
        for (int j = 0; j < n; ++j) {
            const double xj = grid.node_coord(j);
            const double ge = grad_cole_hopf(problem, eps, s, {xj}, quad)[0];
            const double fp = sup_convolve(phi0, lip, delta, {xj + fd_step}, hl_tol);
            const double fm = sup_convolve(phi0, lip, delta, {xj - fd_step}, hl_tol);
            const double gd = (fp - fm) / (2.0 * fd_step);
            double b0 = 0.0;
            if (problem.hamiltonian.kind == HamiltonianKind::QuadraticWithDrift)
                b0 = problem.hamiltonian.drift->eval({xj})[0];
            (*table)[static_cast<std::size_t>(si) * n + j] = -b0 + 0.5 * (ge + gd);
        }
    }

    DriftField f;
    double bsup = 0.0;
    if (problem.hamiltonian.kind == HamiltonianKind::QuadraticWithDrift)
        bsup = problem.hamiltonian.drift->sup_norm_on_cube(grid.half_width);
    f.bound = lip + bsup;
    const double hw = grid.half_width;
    const double dx = grid.spacing();
    const double dt_tab = T / (time_samples - 1);
    f.component = [table, stimes, n, hw, dx, dt_tab, T](double s, const double* x, int) {
        const double sc = std::clamp(s, 0.0, T);
        int si = std::min(static_cast<int>(sc / dt_tab), static_cast<int>(stimes->size()) - 2);
        const double ws = (sc - (*stimes)[static_cast<std::size_t>(si)]) / dt_tab;
        const double xc = std::clamp(x[0], -hw, hw);
        int j = std::min(static_cast<int>((xc + hw) / dx), n - 2);
        const double wx = (xc - (-hw + j * dx)) / dx;
        auto at = [&](int a, int b) { return (*table)[static_cast<std::size_t>(a) * n + b]; };
        const double lo = (1.0 - wx) * at(si, j) + wx * at(si, j + 1);
        const double hi = (1.0 - wx) * at(si + 1, j) + wx * at(si + 1, j + 1);
        return (1.0 - ws) * lo + ws * hi;
    };
    return f;
}

std::size_t EntropyTrace::index_of(double s) const {
    for (std::size_t i = 0; i < times.size(); ++i)
        if (std::abs(times[i] - s) <= 1e-9) return i;
    throw std::invalid_argument("EntropyTrace: time " + std::to_string(s) + " was not recorded");
}

namespace {

struct CellGrid {
    int d = 1;
    int n = 0;  // cells per axis
    double dx = 1.0;
    double hw = 1.0;
    double coord(int i) const { return -hw + (i + 0.5) * dx; }
    double cell_volume() const { return d == 1 ? dx : dx * dx; }
    std::size_t count() const {
        return d == 1 ? static_cast<std::size_t>(n)
                      : static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    }
};

constexpr double kDensityFloor = 1e-300;

struct Observables {
    double entropy = 0.0;
    double fisher = 0.0;
    double mass = 0.0;
    double div_drift = 0.0;  // int div(b) dmu at fixed s
    double laplacian = 0.0;  // int lap_field dmu at fixed s
};

// Interior-cell quadrature of the instrumented quantities; the boundary ring
// carries mass below 1e-10 by domain padding.
Observables observe(const std::vector<double>& mu, const CellGrid& g, const DriftField& drift,
                    double s, const TimeField& lap_field) {
    Observables o;
    const double vol = g.cell_volume();
    const double dx = g.dx;
    auto add_cell = [&](std::size_t idx, const double* x, double grad_log_sq, double divb) {
        const double m = mu[idx];
        o.mass += m * vol;
        if (m > kDensityFloor) {
            o.entropy += m * std::log(m) * vol;
            o.fisher += m * grad_log_sq * vol;
        }
        o.div_drift += m * divb * vol;
        if (lap_field) o.laplacian += m * lap_field(s, Vec(x, x + g.d)) * vol;
    };
    auto dlog = [&](double up, double dn) {
        if (up <= kDensityFloor || dn <= kDensityFloor) return 0.0;
        return (std::log(up) - std::log(dn)) / (2.0 * dx);
    };
    auto divb_at = [&](const double* x) {
        double s_div = 0.0;
        for (int a = 0; a < g.d; ++a) {
            double xp[2] = {x[0], g.d == 2 ? x[1] : 0.0};
            double xm[2] = {x[0], g.d == 2 ? x[1] : 0.0};
            xp[a] += dx;
            xm[a] -= dx;
            s_div += (drift.component(s, xp, a) - drift.component(s, xm, a)) / (2.0 * dx);
        }
        return s_div;
    };
    if (g.d == 1) {
        for (int i = 1; i + 1 < g.n; ++i) {
            const double x[1] = {g.coord(i)};
            const double gl = dlog(mu[static_cast<std::size_t>(i) + 1],
                                   mu[static_cast<std::size_t>(i) - 1]);
            add_cell(static_cast<std::size_t>(i), x, gl * gl, divb_at(x));
        }
        o.mass += (mu[0] + mu[static_cast<std::size_t>(g.n) - 1]) * vol;
    } else {
        const int n = g.n;
        for (int i = 1; i + 1 < n; ++i)
            for (int j = 1; j + 1 < n; ++j) {
                const double x[2] = {g.coord(i), g.coord(j)};
                const std::size_t idx = static_cast<std::size_t>(i) * n + j;
                const double gx = dlog(mu[idx + static_cast<std::size_t>(n)],
                                       mu[idx - static_cast<std::size_t>(n)]);
                const double gy = dlog(mu[idx + 1], mu[idx - 1]);
                add_cell(idx, x, gx * gx + gy * gy, divb_at(x));
            }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i == 0 || j == 0 || i == n - 1 || j == n - 1)
                    o.mass += mu[static_cast<std::size_t>(i) * n + j] * vol;
    }
    return o;
}

}  // namespace

EntropyTrace solve_fokker_planck(const DriftField& drift, double eps, double t, const Vec& x,
                                 const GridSpec& grid, const std::vector<double>& record_times,
                                 double horizon, const TimeField& laplacian_field) {
    grid.validate();
    if (!(eps > 0.0)) throw std::invalid_argument("solve_fokker_planck: eps must be positive");
    if (static_cast<int>(x.size()) != grid.dimension)
        throw std::invalid_argument("solve_fokker_planck: point dimension mismatch");
    for (double s : record_times)
        if (!(s > t && s <= horizon))
            throw std::invalid_argument("solve_fokker_planck: record times must lie in (t, T]");

    CellGrid g;
    g.d = grid.dimension;
    g.n = grid.cells_per_axis;
    g.hw = grid.half_width;
    g.dx = grid.spacing();

    const double t_burn = 4.0 * g.dx * g.dx / eps;
    const double t0 = t + t_burn;
    const double sigma0 = std::sqrt(eps * t_burn);
    if (sigma0 < 2.0 * g.dx - 1e-12)
        throw std::invalid_argument("solve_fokker_planck: mollified datum narrower than 2 dx; refine the grid");
    for (double s : record_times)
        if (s < t0)
            throw std::invalid_argument(
                "solve_fokker_planck: record time inside the mollification burn-in (t_burn = " +
                std::to_string(t_burn) + "); refine the grid");

    // heat-kernel surrogate for the Dirac datum, normalized to unit mass
    std::vector<double> mu(g.count(), 0.0);
    const double vol = g.cell_volume();
    double total = 0.0;
    if (g.d == 1) {
        for (int i = 0; i < g.n; ++i) {
            const double dxi = g.coord(i) - x[0];
            mu[static_cast<std::size_t>(i)] = std::exp(-0.5 * dxi * dxi / (sigma0 * sigma0));
            total += mu[static_cast<std::size_t>(i)] * vol;
        }
    } else {
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) {
                const double dxi = g.coord(i) - x[0];
                const double dyj = g.coord(j) - x[1];
                mu[static_cast<std::size_t>(i) * g.n + j] =
                    std::exp(-0.5 * (dxi * dxi + dyj * dyj) / (sigma0 * sigma0));
                total += mu[static_cast<std::size_t>(i) * g.n + j] * vol;
            }
    }
    for (auto& m : mu) m /= total;

    std::vector<double> events = record_times;
    events.push_back(horizon);
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end(),
                             [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
                 events.end());

    EntropyTrace trace;
    trace.eps = eps;
    trace.start_time = t;

    auto drift_comp = [&](double s, const double* xp, int axis) {
        return drift.component(s, xp, axis);
    };

    std::vector<double> scratch(mu.size());
    double s = t0;
    double div_cum = 0.0, lap_cum = 0.0, fisher_cum = 0.0;
    std::size_t next_event = 0;
    const double dt_cfl = 0.4 * std::min(g.dx / (g.d * drift.bound + 1e-30),
                                         g.dx * g.dx / (g.d * eps));

    auto record = [&](double at_time) {
        const Observables o = observe(mu, g, drift, at_time, laplacian_field);
        trace.times.push_back(at_time);
        trace.entropy.push_back(o.entropy);
        trace.fisher.push_back(o.fisher);
        trace.mass.push_back(o.mass);
        trace.div_drift_integral.push_back(div_cum);
        trace.laplacian_integral.push_back(lap_cum);
        trace.fisher_integral.push_back(fisher_cum);
    };

    while (next_event < events.size() && events[next_event] <= s + 1e-12) {
        record(events[next_event]);
        ++next_event;
    }

    while (s < horizon - 1e-12) {
        const double dt = std::min(dt_cfl, (next_event < events.size() ? events[next_event] : horizon) - s);
        const Observables o = observe(mu, g, drift, s, laplacian_field);
        div_cum += dt * o.div_drift;
        lap_cum += dt * 0.5 * o.laplacian;
        fisher_cum += dt * o.fisher;

        kernels::FvStepParams prm;
        prm.dt = dt;
        prm.dx = g.dx;
        prm.eps = eps;
        prm.x0 = g.coord(0);
        prm.n = g.n;
        prm.dim = g.d;
        prm.s = s + 0.5 * dt;
        kernels::fv_step_omp(std::span<const double>(mu), std::span<double>(scratch), prm,
                             drift_comp);
        mu.swap(scratch);
        s += dt;

        while (next_event < events.size() && events[next_event] <= s + 1e-12) {
            record(events[next_event]);
            ++next_event;
        }
    }
    return trace;
}

double entropy_identity_residual(const EntropyTrace& trace, double s1, double s2) {
    const std::size_t i1 = trace.index_of(s1);
    const std::size_t i2 = trace.index_of(s2);
    const double dh = trace.entropy[i2] - trace.entropy[i1];
    const double div = trace.div_drift_integral[i2] - trace.div_drift_integral[i1];
    const double fis = trace.fisher_integral[i2] - trace.fisher_integral[i1];
    return std::abs(dh - (div - 0.5 * trace.eps * fis));
}

EntropyBoundCheck check_entropy_bound(const EntropyTrace& trace, double tau, double lipschitz,
                                      int dimension) {
    EntropyBoundCheck c;
    c.lhs = trace.entropy[trace.index_of(trace.start_time + tau)];
    c.rhs = -0.5 * dimension * std::log(2.0 * M_PI * trace.eps * tau) +
            0.5 * tau * lipschitz * lipschitz / trace.eps;
    c.holds = c.lhs <= c.rhs + 0.05;
    return c;
}

double integrated_laplacian(const EntropyTrace& trace, double tau) {
    const std::size_t i = trace.index_of(trace.start_time + tau);
    return trace.laplacian_integral.back() - trace.laplacian_integral[i];
}

}  // namespace vvrate
