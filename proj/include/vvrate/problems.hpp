#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vvrate/vec.hpp"

namespace vvrate {

enum class DriftKind { Zero, Affine, Sinusoidal };

// Drift field b(x) from a fixed catalog with explicit derivative bounds.
//   Zero:       b(x) = 0
//   Affine:     b(x) = M x + c, |M| bounded
//   Sinusoidal: b_i(x) = amplitude * sin(frequency * x_i)
struct DriftSpec {
    DriftKind kind = DriftKind::Zero;
    int dimension = 1;
    std::vector<double> matrix;  // row-major d*d, Affine only
    Vec offset;                  // Affine only
    double amplitude = 0.0;      // Sinusoidal only
    double frequency = 1.0;      // Sinusoidal only

    Vec eval(const Vec& x) const;
    // sup of the operator norm of Db (bounded for every catalog entry).
    double first_derivative_bound() const;
    double second_derivative_bound() const;
    // sup |b| over the centered cube of the given half-width.
    double sup_norm_on_cube(double half_width) const;

    static DriftSpec zero(int d);
    static DriftSpec affine(std::vector<double> m, Vec c);
    static DriftSpec constant(Vec c);
    static DriftSpec sinusoidal(int d, double amplitude, double frequency);
};

enum class HamiltonianKind { PureQuadratic, QuadraticWithDrift };

struct HamiltonianSpec {
    HamiltonianKind kind = HamiltonianKind::PureQuadratic;
    std::optional<DriftSpec> drift;  // QuadraticWithDrift only

    static HamiltonianSpec pure_quadratic();
    static HamiltonianSpec with_drift(DriftSpec b);
};

enum class TerminalKind { ConeK, Affine, NegSqrt, GridSampled };

// Rectangular grid carrying sampled terminal data, extended off the nodes by
// multilinear interpolation (constant extension outside the bounding box).
struct SampledGrid {
    int dimension = 1;
    double half_width = 1.0;
    int cells_per_axis = 16;
    std::vector<double> values;  // row-major node values, (cells+1)^d entries

    int nodes_per_axis() const { return cells_per_axis + 1; }
    double spacing() const { return 2.0 * half_width / cells_per_axis; }
    double node_coord(int i) const { return -half_width + i * spacing(); }
    double interpolate(const Vec& x) const;
    double max_difference_quotient() const;
};

struct TerminalData {
    TerminalKind kind = TerminalKind::ConeK;
    int k = 1;                       // ConeK
    Vec slope;                       // Affine: p0
    double offset = 0.0;             // Affine: c0
    std::optional<SampledGrid> grid; // GridSampled

    double eval(const Vec& x) const;
    double lipschitz_const() const;
    // nullopt encodes the merely-Lipschitz regime (semiconcavity unknown);
    // consumers fall back to the generated bound 1/(T-t).
    std::optional<double> semiconcavity_const() const;

    static TerminalData cone(int k);
    static TerminalData affine(Vec p0, double c0);
    static TerminalData neg_sqrt();
    static TerminalData grid_sampled(SampledGrid g);
};

struct ProblemSpec {
    HamiltonianSpec hamiltonian;
    TerminalData terminal;
    double horizon = 1.0;  // T
    int dimension = 1;     // d

    void validate() const;
    double terminal_value(const Vec& x) const { return terminal.eval(x); }
};

struct AssumptionConstants {
    double grad_bound = 0.0;       // L
    double semiconcavity = 0.0;    // lambda (quiet NaN-free: see has_semiconcavity)
    bool has_semiconcavity = true; // false <=> the NONE regime
    double convexity_lower = 1.0;  // theta
    double convexity_upper = 1.0;  // Theta
    double radius = 0.0;           // R
};

double eval_hamiltonian(const HamiltonianSpec& spec, const Vec& x, const Vec& p);
double eval_lagrangian(const HamiltonianSpec& spec, const Vec& x, const Vec& a);
AssumptionConstants assumption_constants(const ProblemSpec& spec, double radius);

}  // namespace vvrate
