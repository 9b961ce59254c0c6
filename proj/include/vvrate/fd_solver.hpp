#pragma once

#include <vector>

#include "vvrate/problems.hpp"
#include "vvrate/vec.hpp"

namespace vvrate {

enum class BoundaryRule { LinearExtrapolation };

struct GridSpec {
    int dimension = 1;  // 1 or 2
    double half_width = 2.0;
    int cells_per_axis = 64;
    BoundaryRule boundary = BoundaryRule::LinearExtrapolation;

    int nodes_per_axis() const { return cells_per_axis + 1; }
    double spacing() const { return 2.0 * half_width / cells_per_axis; }
    double node_coord(int i) const { return -half_width + i * spacing(); }
    std::size_t node_count() const;
    void validate() const;
};

struct SolutionField {
    double time = 0.0;
    GridSpec grid;
    std::vector<double> values;  // row-major node values
    double eps = 0.0;            // 0 for the inviscid solve

    double at(int i, int j = 0) const {
        return grid.dimension == 1 ? values[static_cast<std::size_t>(i)]
                                   : values[static_cast<std::size_t>(i) * grid.nodes_per_axis() + j];
    }
    double max_difference_quotient() const;
};

// Domain-of-dependence padding L_speed * T required beyond the region of
// interest; used both for grid validation and the interior restriction.
double domain_padding(const ProblemSpec& problem, const GridSpec& grid);

// Backward explicit march of the viscous HJB equation with a local
// Lax-Friedrichs numerical Hamiltonian; fields are linearly interpolated in
// time at the requested output times.
std::vector<SolutionField> solve_viscous(const ProblemSpec& problem, double eps,
                                         const GridSpec& grid, const std::vector<double>& times);

std::vector<SolutionField> solve_inviscid(const ProblemSpec& problem, const GridSpec& grid,
                                          const std::vector<double>& times);

// Nodewise phi^eps - phi^0 restricted to the interior region of interest
// (the padding band is dropped).
SolutionField discrete_gap(const ProblemSpec& problem, double eps, const GridSpec& grid, double t);

SolutionField subtract_restricted(const ProblemSpec& problem, const SolutionField& viscous,
                                  const SolutionField& inviscid);

}  // namespace vvrate
