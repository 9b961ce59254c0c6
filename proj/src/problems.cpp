#include "vvrate/problems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace vvrate {

namespace {

void check_dim(const Vec& v, int d, const char* what) {
    if (static_cast<int>(v.size()) != d)
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

Vec DriftSpec::eval(const Vec& x) const {
    check_dim(x, dimension, "DriftSpec::eval");
    Vec out(x.size(), 0.0);
    switch (kind) {
        case DriftKind::Zero:
            break;
        case DriftKind::Affine:
            for (int i = 0; i < dimension; ++i) {
                double s = offset[i];
                for (int j = 0; j < dimension; ++j)
                    s += matrix[static_cast<std::size_t>(i) * dimension + j] * x[j];
                out[static_cast<std::size_t>(i)] = s;
            }
            break;
        case DriftKind::Sinusoidal:
            for (int i = 0; i < dimension; ++i)
                out[static_cast<std::size_t>(i)] = amplitude * std::sin(frequency * x[i]);
            break;
    }
    return out;
}

double DriftSpec::first_derivative_bound() const {
    switch (kind) {
        case DriftKind::Zero:
            return 0.0;
        case DriftKind::Affine: {
            // Frobenius norm dominates the operator norm.
            double s = 0.0;
            for (double m : matrix) s += m * m;
            return std::sqrt(s);
        }
        case DriftKind::Sinusoidal:
            return std::abs(amplitude * frequency);
    }
    return 0.0;
}

double DriftSpec::second_derivative_bound() const {
    switch (kind) {
        case DriftKind::Zero:
        case DriftKind::Affine:
            return 0.0;
        case DriftKind::Sinusoidal:
            return std::abs(amplitude * frequency * frequency);
    }
    return 0.0;
}

double DriftSpec::sup_norm_on_cube(double half_width) const {
    switch (kind) {
        case DriftKind::Zero:
            return 0.0;
        case DriftKind::Affine: {
            double c = 0.0;
            for (double v : offset) c += v * v;
            // |Mx| <= |M|_F * sqrt(d) * half_width on the cube
            return std::sqrt(c) + first_derivative_bound() * std::sqrt(double(dimension)) * half_width;
        }
        case DriftKind::Sinusoidal:
            return std::abs(amplitude) * std::sqrt(double(dimension));
    }
    return 0.0;
}

DriftSpec DriftSpec::zero(int d) {
    DriftSpec b;
    b.kind = DriftKind::Zero;
    b.dimension = d;
    return b;
}

DriftSpec DriftSpec::affine(std::vector<double> m, Vec c) {
    DriftSpec b;
    b.kind = DriftKind::Affine;
    b.dimension = static_cast<int>(c.size());
    if (m.size() != c.size() * c.size())
        throw std::invalid_argument("DriftSpec::affine: matrix must be d*d");
    b.matrix = std::move(m);
    b.offset = std::move(c);
    return b;
}

DriftSpec DriftSpec::constant(Vec c) {
    const auto d = c.size();
    return affine(std::vector<double>(d * d, 0.0), std::move(c));
}

DriftSpec DriftSpec::sinusoidal(int d, double amplitude, double frequency) {
    DriftSpec b;
    b.kind = DriftKind::Sinusoidal;
    b.dimension = d;
    b.amplitude = amplitude;
    b.frequency = frequency;
    return b;
}

HamiltonianSpec HamiltonianSpec::pure_quadratic() { return HamiltonianSpec{}; }

HamiltonianSpec HamiltonianSpec::with_drift(DriftSpec b) {
    HamiltonianSpec h;
    h.kind = HamiltonianKind::QuadraticWithDrift;
    h.drift = std::move(b);
    return h;
}

double SampledGrid::interpolate(const Vec& x) const {
    if (dimension != 1 && dimension != 2)
        throw std::invalid_argument("SampledGrid: dimension must be 1 or 2");
    const int n = nodes_per_axis();
    const double h = spacing();
    auto clampf = [&](double v) { return std::clamp(v, -half_width, half_width); };
    if (dimension == 1) {
        const double xc = clampf(x[0]);
        int i = std::min(static_cast<int>((xc + half_width) / h), cells_per_axis - 1);
        const double w = (xc - node_coord(i)) / h;
        return (1.0 - w) * values[static_cast<std::size_t>(i)] + w * values[static_cast<std::size_t>(i) + 1];
    }
    const double xc = clampf(x[0]);
    const double yc = clampf(x[1]);
    int i = std::min(static_cast<int>((xc + half_width) / h), cells_per_axis - 1);
    int j = std::min(static_cast<int>((yc + half_width) / h), cells_per_axis - 1);
    const double wx = (xc - node_coord(i)) / h;
    const double wy = (yc - node_coord(j)) / h;
    auto at = [&](int a, int b) { return values[static_cast<std::size_t>(a) * n + b]; };
    return (1.0 - wx) * ((1.0 - wy) * at(i, j) + wy * at(i, j + 1)) +
           wx * ((1.0 - wy) * at(i + 1, j) + wy * at(i + 1, j + 1));
}

double SampledGrid::max_difference_quotient() const {
    const int n = nodes_per_axis();
    const double h = spacing();
    double lip = 0.0;
    if (dimension == 1) {
        for (int i = 0; i + 1 < n; ++i)
            lip = std::max(lip, std::abs(values[static_cast<std::size_t>(i) + 1] -
                                         values[static_cast<std::size_t>(i)]) / h);
        return lip;
    }
    auto at = [&](int a, int b) { return values[static_cast<std::size_t>(a) * n + b]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i + 1 < n) lip = std::max(lip, std::abs(at(i + 1, j) - at(i, j)) / h);
            if (j + 1 < n) lip = std::max(lip, std::abs(at(i, j + 1) - at(i, j)) / h);
        }
    return lip;
}

double TerminalData::eval(const Vec& x) const {
    switch (kind) {
        case TerminalKind::ConeK: {
            double s = 0.0;
            for (int i = 0; i < k && i < static_cast<int>(x.size()); ++i) s += x[i] * x[i];
            return -std::sqrt(s);
        }
        case TerminalKind::Affine:
            check_dim(x, static_cast<int>(slope.size()), "TerminalData::eval");
            return dot(slope, x) + offset;
        case TerminalKind::NegSqrt:
            return -std::sqrt(1.0 + norm2_sq(x));
        case TerminalKind::GridSampled:
            return grid->interpolate(x);
    }
    return 0.0;
}

double TerminalData::lipschitz_const() const {
    switch (kind) {
        case TerminalKind::ConeK:
            return 1.0;
        case TerminalKind::Affine:
            return norm2(slope);
        case TerminalKind::NegSqrt:
            return 1.0;
        case TerminalKind::GridSampled:
            return grid->max_difference_quotient();
    }
    return 0.0;
}

std::optional<double> TerminalData::semiconcavity_const() const {
    switch (kind) {
        case TerminalKind::ConeK:
            return 0.0;  // concave
        case TerminalKind::Affine:
            return 0.0;
        case TerminalKind::NegSqrt:
            // Hessian of -sqrt(1+|x|^2) is bounded above by 0, but the clean
            // certified bound used throughout is 1.
            return 1.0;
        case TerminalKind::GridSampled:
            return std::nullopt;
    }
    return std::nullopt;
}

TerminalData TerminalData::cone(int k) {
    if (k < 1) throw std::invalid_argument("TerminalData::cone: k >= 1 required");
    TerminalData g;
    g.kind = TerminalKind::ConeK;
    g.k = k;
    return g;
}

TerminalData TerminalData::affine(Vec p0, double c0) {
    TerminalData g;
    g.kind = TerminalKind::Affine;
    g.slope = std::move(p0);
    g.offset = c0;
    return g;
}

TerminalData TerminalData::neg_sqrt() {
    TerminalData g;
    g.kind = TerminalKind::NegSqrt;
    return g;
}

TerminalData TerminalData::grid_sampled(SampledGrid sg) {
    TerminalData g;
    g.kind = TerminalKind::GridSampled;
    g.grid = std::move(sg);
    return g;
}

void ProblemSpec::validate() const {
    if (dimension < 1) throw std::invalid_argument("ProblemSpec: dimension >= 1 required");
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("ProblemSpec: horizon must be finite and positive");
    if (terminal.kind == TerminalKind::ConeK && terminal.k > dimension)
        throw std::invalid_argument("ProblemSpec: cone parameter k must satisfy k <= d");
    if (hamiltonian.kind == HamiltonianKind::QuadraticWithDrift &&
        (!hamiltonian.drift || hamiltonian.drift->dimension != dimension))
        throw std::invalid_argument("ProblemSpec: drift dimension mismatch");
    if (terminal.kind == TerminalKind::Affine &&
        static_cast<int>(terminal.slope.size()) != dimension)
        throw std::invalid_argument("ProblemSpec: affine slope dimension mismatch");
}

double eval_hamiltonian(const HamiltonianSpec& spec, const Vec& x, const Vec& p) {
    if (x.size() != p.size()) throw std::invalid_argument("eval_hamiltonian: dimension mismatch");
    double h = 0.5 * norm2_sq(p);
    if (spec.kind == HamiltonianKind::QuadraticWithDrift) {
        if (!spec.drift) throw std::invalid_argument("eval_hamiltonian: missing drift");
        h -= dot(spec.drift->eval(x), p);
    }
    return h;
}

double eval_lagrangian(const HamiltonianSpec& spec, const Vec& x, const Vec& a) {
    if (x.size() != a.size()) throw std::invalid_argument("eval_lagrangian: dimension mismatch");
    Vec b(x.size(), 0.0);
    if (spec.kind == HamiltonianKind::QuadraticWithDrift) {
        if (!spec.drift) throw std::invalid_argument("eval_lagrangian: missing drift");
        b = spec.drift->eval(x);
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = b[i] - a[i];
        s += d * d;
    }
    return 0.5 * s;
}

AssumptionConstants assumption_constants(const ProblemSpec& spec, double radius) {
    spec.validate();
    const double lip = spec.terminal.lipschitz_const();
    if (radius < lip)
        throw std::invalid_argument("assumption_constants: radius must dominate the terminal Lipschitz constant");
    AssumptionConstants c;
    c.radius = radius;
    // Gronwall growth of the gradient bound under the drift derivative.
    double drift_growth = 0.0;
    if (spec.hamiltonian.kind == HamiltonianKind::QuadraticWithDrift)
        drift_growth = spec.hamiltonian.drift->first_derivative_bound();
    c.grad_bound = lip * std::exp(drift_growth * spec.horizon);
    const auto lambda = spec.terminal.semiconcavity_const();
    c.has_semiconcavity = lambda.has_value();
    c.semiconcavity = lambda.value_or(0.0);
    // The quadratic family has identity Hessian in p for every radius.
    c.convexity_lower = 1.0;
    c.convexity_upper = 1.0;
    return c;
}

}  // namespace vvrate
