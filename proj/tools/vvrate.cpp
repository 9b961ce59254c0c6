#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vvrate/cole_hopf.hpp"
#include "vvrate/csv.hpp"
#include "vvrate/fd_solver.hpp"
#include "vvrate/fokker_planck.hpp"
#include "vvrate/hopf_lax.hpp"
#include "vvrate/plot.hpp"
#include "vvrate/problems.hpp"
#include "vvrate/rates.hpp"
#include "vvrate/regularize.hpp"

namespace {

using namespace vvrate;

constexpr int kExitOk = 0;
constexpr int kExitBoundFail = 1;
constexpr int kExitConfig = 2;

struct TerminalFlags {
    std::string terminal = "cone";
    int k = 1;
    std::vector<double> slope;
    double offset = 0.0;
};

struct DriftFlags {
    std::string drift = "none";
    std::vector<double> drift_v;
    double amplitude = 0.5;
    double frequency = 1.0;
};

void add_terminal_flags(CLI::App* cmd, TerminalFlags& f) {
    cmd->add_option("--terminal", f.terminal, "terminal datum: cone|affine|neg_sqrt")
        ->check(CLI::IsMember({"cone", "affine", "neg_sqrt"}))
        ->capture_default_str();
    cmd->add_option("--k", f.k, "cone parameter k (cone terminal)")->capture_default_str();
    cmd->add_option("--slope", f.slope, "affine slope vector p0");
    cmd->add_option("--offset", f.offset, "affine offset c0")->capture_default_str();
}

void add_drift_flags(CLI::App* cmd, DriftFlags& f) {
    cmd->add_option("--drift", f.drift, "drift: none|zero|constant|sinusoidal")
        ->check(CLI::IsMember({"none", "zero", "constant", "sinusoidal"}))
        ->capture_default_str();
    cmd->add_option("--drift-v", f.drift_v, "constant drift vector");
    cmd->add_option("--amp", f.amplitude, "sinusoidal drift amplitude")->capture_default_str();
    cmd->add_option("--freq", f.frequency, "sinusoidal drift frequency")->capture_default_str();
}

ProblemSpec build_problem(const TerminalFlags& tf, const DriftFlags& df, int d, double horizon) {
    ProblemSpec p;
    p.dimension = d;
    p.horizon = horizon;
    if (tf.terminal == "cone") {
        p.terminal = TerminalData::cone(tf.k);
    } else if (tf.terminal == "affine") {
        Vec slope = tf.slope;
        if (slope.empty()) slope.assign(static_cast<std::size_t>(d), 1.0);
        p.terminal = TerminalData::affine(slope, tf.offset);
    } else {
        p.terminal = TerminalData::neg_sqrt();
    }
    if (df.drift == "none") {
        p.hamiltonian = HamiltonianSpec::pure_quadratic();
    } else if (df.drift == "zero") {
        p.hamiltonian = HamiltonianSpec::with_drift(DriftSpec::zero(d));
    } else if (df.drift == "constant") {
        Vec v = df.drift_v;
        if (v.empty()) v.assign(static_cast<std::size_t>(d), 0.0);
        p.hamiltonian = HamiltonianSpec::with_drift(DriftSpec::constant(v));
    } else {
        p.hamiltonian = HamiltonianSpec::with_drift(DriftSpec::sinusoidal(d, df.amplitude, df.frequency));
    }
    p.validate();
    return p;
}

// eps tokens accept plain decimals and dyadic shorthand like 2^-14
double parse_eps_token(const std::string& tok) {
    if (tok.rfind("2^", 0) == 0) {
        const int e = std::stoi(tok.substr(2));
        return std::ldexp(1.0, e);
    }
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("bad eps value: " + tok);
    return v;
}

// "dyadic:6:14" -> {2^-6, ..., 2^-14}; otherwise a comma list of eps tokens
std::vector<double> parse_eps_grid(const std::string& s) {
    std::vector<double> grid;
    if (s.rfind("dyadic:", 0) == 0) {
        const auto colon = s.find(':', 7);
        if (colon == std::string::npos)
            throw std::invalid_argument("eps-grid: expected dyadic:<lo>:<hi>");
        const int lo = std::stoi(s.substr(7, colon - 7));
        const int hi = std::stoi(s.substr(colon + 1));
        if (lo > hi) throw std::invalid_argument("eps-grid: dyadic lo exceeds hi");
        for (int m = lo; m <= hi; ++m) grid.push_back(std::ldexp(1.0, -m));
        return grid;
    }
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const std::string tok =
            s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!tok.empty()) grid.push_back(parse_eps_token(tok));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (grid.empty()) throw std::invalid_argument("eps-grid: empty");
    return grid;
}

std::string out_path(const std::string& out_dir, const std::string& name) {
    if (out_dir.empty() || out_dir == ".") return name;
    return out_dir + "/" + name;
}

// Echo every option of the parsed subcommand as flat dotted key = value so
// the run is reproducible from its artifacts.
void write_resolved_cfg(const CLI::App& root, const CLI::App& sub, const std::string& out_dir) {
    std::ofstream out(out_path(out_dir, "resolved.cfg"), std::ios::binary);
    if (!out) throw std::runtime_error("cannot write resolved.cfg");
    out << "command = " << sub.get_name() << "\n";
    auto emit = [&](const CLI::App& app, const std::string& prefix) {
        for (const CLI::Option* opt : app.get_options()) {
            std::string name = opt->get_single_name();
            if (name.empty() || name == "help" || name == "config") continue;
            std::string value;
            if (!opt->results().empty()) {
                for (std::size_t i = 0; i < opt->results().size(); ++i)
                    value += (i ? "," : "") + opt->results()[i];
            } else if (opt->get_expected_min() == 0) {
                value = "0";  // unset flag
            } else {
                value = opt->get_default_str();
            }
            out << prefix << name << " = " << value << "\n";
        }
    };
    emit(root, "");
    emit(sub, sub.get_name() + ".");
}

void write_field_csv(const std::string& path, const SolutionField& f) {
    CsvWriter w(path);
    w.comment("t=" + CsvWriter::format(f.time) + " eps=" + CsvWriter::format(f.eps) +
              " dx=" + CsvWriter::format(f.grid.spacing()));
    const int n = f.grid.nodes_per_axis();
    if (f.grid.dimension == 1) {
        for (int i = 0; i < n; ++i) w.row({f.grid.node_coord(i), f.at(i)});
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                w.row({f.grid.node_coord(i), f.grid.node_coord(j), f.at(i, j)});
    }
}

void write_gaps_csv(const std::string& path, int d, const std::vector<GapSample>& samples) {
    CsvWriter w(path);
    std::vector<std::string> cols = {"eps", "t"};
    for (int a = 0; a < d; ++a) cols.push_back("x" + std::to_string(a + 1));
    cols.insert(cols.end(), {"phi_eps", "phi_zero", "gap", "method"});
    w.header(cols);
    for (const auto& s : samples) {
        std::vector<std::string> cells = {CsvWriter::format(s.eps), CsvWriter::format(s.t)};
        for (double xi : s.x) cells.push_back(CsvWriter::format(xi));
        cells.push_back(CsvWriter::format(s.phi_eps));
        cells.push_back(CsvWriter::format(s.phi_zero));
        cells.push_back(CsvWriter::format(s.gap));
        cells.push_back(s.method);
        w.mixed_row(cells);
    }
}

int cmd_solve(const ProblemSpec& problem, double eps, double t, const std::string& engine,
              double half_width, int cells, bool emit_gap, const std::string& out_dir) {
    if (eps < 0.0) throw std::invalid_argument("invalid value for eps: must be >= 0");
    if (t < 0.0 || t >= problem.horizon)
        throw std::invalid_argument("invalid value for t: need 0 <= t < horizon");
    if (problem.dimension > 2)
        throw std::invalid_argument("invalid value for d: solve supports d <= 2");

    GridSpec grid;
    grid.dimension = problem.dimension;
    grid.half_width = half_width;
    grid.cells_per_axis = cells;

    if (engine == "fd") {
        auto fields = solve_viscous(problem, eps, grid, {t});
        write_field_csv(out_path(out_dir, "solution.csv"), fields.at(0));
        if (emit_gap) {
            auto inviscid = solve_inviscid(problem, grid, {t});
            write_field_csv(out_path(out_dir, "gap_field.csv"),
                            subtract_restricted(problem, fields.at(0), inviscid.at(0)));
        }
        return kExitOk;
    }

    if (problem.hamiltonian.kind != HamiltonianKind::PureQuadratic)
        throw std::invalid_argument("invalid value for engine: exact requires drift none");
    // exact engine samples the evaluators on the same lattice
    SolutionField f;
    f.time = t;
    f.eps = eps;
    f.grid = grid;
    f.values.resize(grid.node_count());
    QuadratureSpec quad;
    const int n = grid.nodes_per_axis();
    std::vector<std::pair<double, Vec>> points;
    for (std::size_t idx = 0; idx < f.values.size(); ++idx) {
        Vec x;
        if (grid.dimension == 1) {
            x = {grid.node_coord(static_cast<int>(idx))};
        } else {
            x = {grid.node_coord(static_cast<int>(idx) / n),
                 grid.node_coord(static_cast<int>(idx) % n)};
        }
        f.values[idx] = eps > 0.0 ? eval_cole_hopf(problem, eps, t, x, quad).value
                                  : eval_hopf_lax(problem, t, x, 1e-8).value;
        points.emplace_back(t, x);
    }
    write_field_csv(out_path(out_dir, "solution.csv"), f);
    if (emit_gap) {
        if (!(eps > 0.0)) throw std::invalid_argument("invalid value for eps: gap needs eps > 0");
        auto samples = gap_sweep(problem, points, {eps}, GapEngine::Exact);
        write_gaps_csv(out_path(out_dir, "gaps.csv"), problem.dimension, samples);
    }
    return kExitOk;
}

int cmd_example(int k, double tau, const std::string& eps_min_s, const std::string& eps_max_s,
                bool plot, const std::string& out_dir) {
    if (k < 1 || k > 64) throw std::invalid_argument("invalid value for k: need 1 <= k <= 64");
    if (!(tau > 0.0)) throw std::invalid_argument("invalid value for tau: must be > 0");
    const double eps_min = parse_eps_token(eps_min_s);
    const double eps_max = parse_eps_token(eps_max_s);
    if (!(eps_min > 0.0) || eps_min > eps_max)
        throw std::invalid_argument("invalid value for eps-min/eps-max");

    ProblemSpec problem;
    problem.dimension = k;
    problem.horizon = tau;
    problem.terminal = TerminalData::cone(k);
    problem.hamiltonian = HamiltonianSpec::pure_quadratic();

    const ExampleExpansion exp = example_expansion(k, tau);
    std::vector<double> grid;
    for (double eps = eps_max; eps >= eps_min * (1.0 - 1e-12); eps *= 0.5) grid.push_back(eps);

    CsvWriter w(out_path(out_dir, "example_k" + std::to_string(k) + ".csv"));
    w.header({"eps", "gap", "expansion", "residual_over_eps"});
    PlotSeries measured{"gap", {}, {}, false};
    PlotSeries model{"expansion", {}, {}, true};
    for (double eps : grid) {
        const double gap = cole_hopf_radial_gap(problem, eps, tau);
        const double pred = exp.predict(eps);
        w.row({eps, gap, pred, std::abs(gap - pred) / eps});
        measured.x.push_back(eps);
        measured.y.push_back(gap / eps);
        model.x.push_back(eps);
        model.y.push_back(pred / eps);
    }
    if (plot)
        write_svg_logx(out_path(out_dir, "example_k" + std::to_string(k) + ".svg"),
                       "cone k=" + std::to_string(k) + " gap/eps vs eps", {measured, model});
    return kExitOk;
}

int cmd_rate(const ProblemSpec& problem, double t, const Vec& x, const std::string& eps_grid_s,
             const std::string& engine, bool plot, const std::string& out_dir) {
    const std::vector<double> eps_grid = parse_eps_grid(eps_grid_s);
    Vec x0 = x;
    if (x0.empty()) x0.assign(static_cast<std::size_t>(problem.dimension), 0.0);
    if (static_cast<int>(x0.size()) != problem.dimension)
        throw std::invalid_argument("invalid value for x: dimension mismatch");

    const GapEngine eng = engine == "fd" ? GapEngine::FiniteDifference : GapEngine::Exact;
    auto samples = gap_sweep(problem, {{t, x0}}, eps_grid, eng);
    write_gaps_csv(out_path(out_dir, "gaps.csv"), problem.dimension, samples);

    const RateFit fit = fit_rate(samples);
    CsvWriter w(out_path(out_dir, "ratefit.csv"));
    std::vector<std::string> cols = {"t"};
    for (int a = 0; a < problem.dimension; ++a) cols.push_back("x" + std::to_string(a + 1));
    cols.insert(cols.end(), {"A", "B", "residual_rms", "n_eps"});
    w.header(cols);
    std::vector<double> row = {t};
    row.insert(row.end(), x0.begin(), x0.end());
    row.insert(row.end(), {fit.coeff_eps_log, fit.coeff_eps, fit.residual_rms,
                           static_cast<double>(fit.eps_grid.size())});
    w.row(row);

    if (plot) {
        PlotSeries measured{"gap", {}, {}, false};
        PlotSeries fitted{"fit", {}, {}, true};
        for (const auto& s : samples) {
            measured.x.push_back(s.eps);
            measured.y.push_back(s.gap / s.eps);
            fitted.x.push_back(s.eps);
            fitted.y.push_back(fit.coeff_eps_log * std::log(1.0 / s.eps) + fit.coeff_eps);
        }
        write_svg_logx(out_path(out_dir, "ratefit.svg"), "gap/eps vs eps with fitted rate model",
                       {measured, fitted});
    }

    const BoundReport report = check_bounds(problem, samples);
    for (const auto& b : report.bounds)
        std::cout << b.name << " constant " << b.constant << (b.diverges ? " FAIL" : " ok") << "\n";
    return report.any_failure() ? kExitBoundFail : kExitOk;
}

int cmd_entropy(const std::string& drift, double v, double eps, double tau, int d, int k,
                double delta, double half_width, int cells, const std::string& out_dir) {
    if (d != 1) throw std::invalid_argument("invalid value for d: entropy supports d = 1");
    if (!(eps > 0.0)) throw std::invalid_argument("invalid value for eps: must be > 0");
    if (!(tau > 0.0)) throw std::invalid_argument("invalid value for tau: must be > 0");

    GridSpec grid;
    grid.dimension = 1;
    grid.half_width = half_width;
    grid.cells_per_axis = cells;

    DriftField field;
    double lipschitz = 0.0;
    if (drift == "zero") {
        field = DriftField::zero();
    } else if (drift == "constant") {
        field = DriftField::constant({v});
        lipschitz = std::abs(v);
    } else {
        ProblemSpec problem;
        problem.dimension = 1;
        problem.horizon = tau;
        problem.terminal = TerminalData::cone(k);
        problem.hamiltonian = HamiltonianSpec::pure_quadratic();
        field = make_solver_drift(problem, eps, delta, grid, 9);
        lipschitz = assumption_constants(problem, half_width).grad_bound;
    }

    std::vector<double> record;
    const double t_burn = 4.0 * grid.spacing() * grid.spacing() / eps;
    for (int i = 1; i <= 10; ++i) record.push_back(t_burn + (tau - t_burn) * i / 10.0);
    EntropyTrace trace = solve_fokker_planck(field, eps, 0.0, {0.0}, grid, record, tau);

    CsvWriter w(out_path(out_dir, "entropy.csv"));
    w.header({"s", "entropy", "fisher", "mass", "div_drift_cum", "laplacian_cum"});
    for (std::size_t i = 0; i < trace.times.size(); ++i)
        w.row({trace.times[i], trace.entropy[i], trace.fisher[i], trace.mass[i],
               trace.div_drift_integral[i], trace.laplacian_integral[i]});

    const EntropyBoundCheck check = check_entropy_bound(trace, tau, lipschitz, 1);
    CsvWriter wb(out_path(out_dir, "entropy_bound.csv"));
    wb.header({"eps", "tau", "lhs", "rhs", "holds"});
    wb.row({eps, tau, check.lhs, check.rhs, check.holds ? 1.0 : 0.0});
    std::cout << "entropy bound " << (check.holds ? "holds=1" : "holds=0") << " lhs=" << check.lhs
              << " rhs=" << check.rhs << "\n";
    return check.holds ? kExitOk : kExitBoundFail;
}

int cmd_gap(const ProblemSpec& problem, const std::string& eps_grid_s, int n_points, long seed,
            const std::string& out_dir) {
    const std::vector<double> eps_grid = parse_eps_grid(eps_grid_s);
    const double T = problem.horizon;
    const double eps_min = *std::min_element(eps_grid.begin(), eps_grid.end());

    // the singular point x = 0 and a terminal-layer time are always probed
    std::vector<std::pair<double, Vec>> points;
    points.emplace_back(0.0, Vec(static_cast<std::size_t>(problem.dimension), 0.0));
    points.emplace_back(std::max(0.0, T - eps_min),
                        Vec(static_cast<std::size_t>(problem.dimension), 0.0));
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    std::uniform_real_distribution<double> ux(-1.0, 1.0);
    std::uniform_real_distribution<double> ut(0.0, 0.9 * T);
    for (int i = 0; i < n_points; ++i) {
        Vec x(static_cast<std::size_t>(problem.dimension));
        for (auto& c : x) c = ux(rng);
        points.emplace_back(ut(rng), std::move(x));
    }

    auto samples = gap_sweep(problem, points, eps_grid, GapEngine::Exact);
    write_gaps_csv(out_path(out_dir, "gaps.csv"), problem.dimension, samples);

    bool ok = true;
    const auto lambda = problem.terminal.semiconcavity_const();
    if (lambda) {
        for (const auto& s : samples) {
            const double bound =
                0.5 * (T - s.t) * problem.dimension * (*lambda) * s.eps + 1e-8;
            if (s.gap > bound) {
                std::cout << "upper bound FAIL at eps=" << s.eps << " t=" << s.t
                          << " gap=" << s.gap << " bound=" << bound << "\n";
                ok = false;
            }
        }
    }
    const BoundReport report = check_bounds(problem, samples);
    for (const auto& b : report.bounds)
        std::cout << b.name << " constant " << b.constant << (b.diverges ? " FAIL" : " ok") << "\n";
    return (ok && !report.any_failure()) ? kExitOk : kExitBoundFail;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("VVRATE_THREADS")) {
#ifdef _OPENMP
        const int n = std::atoi(threads);
        if (n > 0) omp_set_num_threads(n);
#endif
        (void)threads;
    }

    CLI::App app{"vvrate: vanishing-viscosity rate laboratory for quadratic HJB equations"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key = value config file; flags override file values");

    std::string out_dir = ".";
    long seed = 0;
    app.add_option("--out-dir", out_dir, "directory for all outputs")->capture_default_str();
    app.add_option("--seed", seed, "seed for sampled point sets")->capture_default_str();

    // solve
    auto* solve = app.add_subcommand("solve", "evaluate one solution field and write it as CSV");
    TerminalFlags solve_tf;
    DriftFlags solve_df;
    int solve_d = 1;
    double solve_T = 1.0, solve_eps = 0.1, solve_t = 0.0, solve_hw = 4.0;
    int solve_cells = 64;
    std::string solve_engine = "exact";
    bool solve_emit_gap = false;
    add_terminal_flags(solve, solve_tf);
    add_drift_flags(solve, solve_df);
    solve->add_option("--d", solve_d, "space dimension")->capture_default_str();
    solve->add_option("--T", solve_T, "horizon")->capture_default_str();
    solve->add_option("--eps", solve_eps, "viscosity (0 = inviscid)")->capture_default_str();
    solve->add_option("--t", solve_t, "evaluation time")->capture_default_str();
    solve->add_option("--engine", solve_engine, "exact|fd")
        ->check(CLI::IsMember({"exact", "fd"}))
        ->capture_default_str();
    solve->add_option("--half-width", solve_hw, "grid half width")->capture_default_str();
    solve->add_option("--cells", solve_cells, "grid cells per axis")->capture_default_str();
    solve->add_flag("--emit-gap", solve_emit_gap, "also write the viscous-inviscid gap");

    // example
    auto* example = app.add_subcommand("example", "radial cone expansion study");
    int ex_k = 2;
    double ex_tau = 1.0;
    std::string ex_eps_min = "2^-14", ex_eps_max = "2^-4";
    bool ex_plot = false;
    example->add_option("--k", ex_k, "cone parameter k")->capture_default_str();
    example->add_option("--tau", ex_tau, "time to horizon")->capture_default_str();
    example->add_option("--eps-min", ex_eps_min, "smallest eps (accepts 2^-m)")->capture_default_str();
    example->add_option("--eps-max", ex_eps_max, "largest eps (accepts 2^-m)")->capture_default_str();
    example->add_flag("--plot", ex_plot, "write an SVG of gap/eps against eps");

    // rate
    auto* rate = app.add_subcommand("rate", "sweep eps at one point and fit the rate model");
    TerminalFlags rate_tf;
    DriftFlags rate_df;
    int rate_d = 1;
    double rate_T = 1.0, rate_t = 0.0;
    std::vector<double> rate_x;
    std::string rate_eps_grid = "dyadic:6:14", rate_engine = "exact";
    bool rate_plot = false;
    add_terminal_flags(rate, rate_tf);
    add_drift_flags(rate, rate_df);
    rate->add_option("--d", rate_d, "space dimension")->capture_default_str();
    rate->add_option("--T", rate_T, "horizon")->capture_default_str();
    rate->add_option("--t", rate_t, "evaluation time")->capture_default_str();
    rate->add_option("--x", rate_x, "evaluation point (defaults to the origin)");
    rate->add_option("--eps-grid", rate_eps_grid, "dyadic:<lo>:<hi> or comma list")
        ->capture_default_str();
    rate->add_option("--engine", rate_engine, "exact|fd")
        ->check(CLI::IsMember({"exact", "fd"}))
        ->capture_default_str();
    rate->add_flag("--plot", rate_plot, "write an SVG of the fit");

    // entropy
    auto* entropy = app.add_subcommand("entropy", "Fokker-Planck entropy trace and bound check");
    std::string en_drift = "zero";
    double en_v = 0.0, en_eps = 0.1, en_tau = 0.5, en_delta = 0.1, en_hw = 2.0;
    int en_d = 1, en_k = 1, en_cells = 400;
    entropy->add_option("--drift", en_drift, "zero|constant|solver")
        ->check(CLI::IsMember({"zero", "constant", "solver"}))
        ->capture_default_str();
    entropy->add_option("--v", en_v, "constant drift value")->capture_default_str();
    entropy->add_option("--eps", en_eps, "viscosity")->capture_default_str();
    entropy->add_option("--tau", en_tau, "flow duration")->capture_default_str();
    entropy->add_option("--d", en_d, "space dimension (1 only)")->capture_default_str();
    entropy->add_option("--k", en_k, "cone parameter for the solver drift")->capture_default_str();
    entropy->add_option("--delta", en_delta, "sup-convolution parameter for the solver drift")
        ->capture_default_str();
    entropy->add_option("--half-width", en_hw, "grid half width")->capture_default_str();
    entropy->add_option("--cells", en_cells, "grid cells")->capture_default_str();

    // gap
    auto* gap = app.add_subcommand("gap", "sample gaps and check the one-sided bounds");
    TerminalFlags gap_tf;
    DriftFlags gap_df;
    int gap_d = 1, gap_points = 20;
    double gap_T = 1.0;
    std::string gap_eps_grid = "0.05";
    add_terminal_flags(gap, gap_tf);
    add_drift_flags(gap, gap_df);
    gap->add_option("--d", gap_d, "space dimension")->capture_default_str();
    gap->add_option("--T", gap_T, "horizon")->capture_default_str();
    gap->add_option("--eps", gap_eps_grid, "eps value, comma list, or dyadic:<lo>:<hi>")
        ->capture_default_str();
    gap->add_option("--points", gap_points, "number of sampled (t,x) points")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        CLI::App* sub = app.get_subcommands().at(0);
        write_resolved_cfg(app, *sub, out_dir);
        if (sub == solve)
            return cmd_solve(build_problem(solve_tf, solve_df, solve_d, solve_T), solve_eps,
                             solve_t, solve_engine, solve_hw, solve_cells, solve_emit_gap, out_dir);
        if (sub == example) return cmd_example(ex_k, ex_tau, ex_eps_min, ex_eps_max, ex_plot, out_dir);
        if (sub == rate)
            return cmd_rate(build_problem(rate_tf, rate_df, rate_d, rate_T), rate_t, rate_x,
                            rate_eps_grid, rate_engine, rate_plot, out_dir);
        if (sub == entropy)
            return cmd_entropy(en_drift, en_v, en_eps, en_tau, en_d, en_k, en_delta, en_hw,
                               en_cells, out_dir);
        if (sub == gap)
            return cmd_gap(build_problem(gap_tf, gap_df, gap_d, gap_T), gap_eps_grid, gap_points,
                           seed, out_dir);
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
