#pragma once

#include <cstddef>
#include <span>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vvrate::kernels {

// Serial reference kernels and their OpenMP counterparts. Grid-step kernels
// write independent outputs, so the parallel variants are deterministic; the
// reductions combine fixed per-thread partials in thread order for the same
// reason. Tests assert serial/parallel agreement, the bench target times them.

double max_serial(std::span<const double> a);
double max_omp(std::span<const double> a);

// sum of exp(a[i] - shift)
double sumexp_serial(std::span<const double> a, double shift);
double sumexp_omp(std::span<const double> a, double shift);

// One explicit step of the backward HJB march (local Lax-Friedrichs plus
// centered viscosity), linear-extrapolation ghost nodes:
//   u_out = u - dt * ( H(x, pbar) - sum_j sigma/2 (pj+ - pj-) - eps/2 lap(u) ).
struct HjbStepParams {
    double dt = 0.0;
    double dx = 1.0;
    double eps = 0.0;
    double sigma = 0.0;
    double x0 = 0.0;  // coordinate of node 0 along each axis
    int n = 0;        // nodes per axis
    int dim = 1;      // 1 or 2
};

// hamiltonian(x: const double*, p: const double*) -> double, arrays of length dim.
template <class HFn>
inline void hjb_step_node(const double* u, double* out, const HjbStepParams& prm,
                          const HFn& hamiltonian, std::ptrdiff_t i, std::ptrdiff_t j) {
    const std::ptrdiff_t n = prm.n;
    const std::ptrdiff_t stride[2] = {prm.dim == 1 ? 1 : n, 1};
    const std::ptrdiff_t idx = prm.dim == 1 ? i : i * n + j;
    auto nb = [&](int axis, int dir) -> double {
        const std::ptrdiff_t pos = axis == 0 ? i : j;
        if (pos + dir < 0) return 2.0 * u[idx] - u[idx + stride[axis]];
        if (pos + dir >= n) return 2.0 * u[idx] - u[idx - stride[axis]];
        return u[idx + dir * stride[axis]];
    };
    double x[2] = {prm.x0 + i * prm.dx, prm.x0 + j * prm.dx};
    double pbar[2] = {0.0, 0.0};
    double diss = 0.0, lap = 0.0;
    const double uc = u[idx];
    for (int a = 0; a < prm.dim; ++a) {
        const double um = nb(a, -1), up = nb(a, +1);
        const double pm = (uc - um) / prm.dx, pp = (up - uc) / prm.dx;
        pbar[a] = 0.5 * (pm + pp);
        diss += 0.5 * prm.sigma * (pp - pm);
        lap += (up - 2.0 * uc + um) / (prm.dx * prm.dx);
    }
    const double hnum = hamiltonian(x, pbar) - diss;
    out[idx] = uc - prm.dt * (hnum - 0.5 * prm.eps * lap);
}

template <class HFn>
void hjb_step_serial(std::span<const double> u, std::span<double> out, const HjbStepParams& prm,
                     const HFn& hamiltonian) {
    const std::ptrdiff_t n = prm.n;
    if (prm.dim == 1) {
        for (std::ptrdiff_t i = 0; i < n; ++i)
            hjb_step_node(u.data(), out.data(), prm, hamiltonian, i, 0);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i)
            for (std::ptrdiff_t j = 0; j < n; ++j)
                hjb_step_node(u.data(), out.data(), prm, hamiltonian, i, j);
    }
}

template <class HFn>
void hjb_step_omp(std::span<const double> u, std::span<double> out, const HjbStepParams& prm,
                  const HFn& hamiltonian) {
    const std::ptrdiff_t n = prm.n;
    if (prm.dim == 1) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            hjb_step_node(u.data(), out.data(), prm, hamiltonian, i, 0);
    } else {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            for (std::ptrdiff_t j = 0; j < n; ++j)
                hjb_step_node(u.data(), out.data(), prm, hamiltonian, i, j);
    }
}

// One conservative finite-volume step of the Fokker-Planck flow
//   d/ds mu = div(mu b) + eps/2 lap(mu),
// upwind advection with velocity -b, centered diffusion, zero-flux boundary.
struct FvStepParams {
    double dt = 0.0;
    double dx = 1.0;
    double eps = 0.0;
    double x0 = 0.0;  // center coordinate of cell 0 along each axis
    int n = 0;        // cells per axis
    int dim = 1;
    double s = 0.0;   // current time, forwarded to the drift callback
};

// drift(s, x: const double*, axis) -> b_axis(x)
template <class BFn>
inline double fv_face_flux(const double* mu, const FvStepParams& prm, const BFn& drift, int axis,
                           std::ptrdiff_t i, std::ptrdiff_t j) {
    // Flux through the face between cell (i,j) and its +1 neighbour on axis;
    // q = -b mu - eps/2 d(mu)/dx, zero at the outer boundary.
    const std::ptrdiff_t n = prm.n;
    const std::ptrdiff_t stride = (prm.dim == 2 && axis == 0) ? n : 1;
    const std::ptrdiff_t pos = axis == 0 ? i : j;
    if (pos + 1 >= n) return 0.0;
    const std::ptrdiff_t idx = prm.dim == 1 ? i : i * n + j;
    double x[2] = {prm.x0 + i * prm.dx, prm.x0 + j * prm.dx};
    x[axis] += 0.5 * prm.dx;
    const double v = -drift(prm.s, x, axis);  // advection velocity
    const double mu_up = v >= 0.0 ? mu[idx] : mu[idx + stride];
    return v * mu_up - 0.5 * prm.eps * (mu[idx + stride] - mu[idx]) / prm.dx;
}

template <class BFn>
inline void fv_step_cell(const double* mu, double* out, const FvStepParams& prm, const BFn& drift,
                         std::ptrdiff_t i, std::ptrdiff_t j) {
    const std::ptrdiff_t n = prm.n;
    const std::ptrdiff_t idx = prm.dim == 1 ? i : i * n + j;
    double div = 0.0;
    for (int a = 0; a < prm.dim; ++a) {
        const double fp = fv_face_flux(mu, prm, drift, a, i, j);
        double fm;
        if (a == 0)
            fm = i == 0 ? 0.0 : fv_face_flux(mu, prm, drift, a, i - 1, j);
        else
            fm = j == 0 ? 0.0 : fv_face_flux(mu, prm, drift, a, i, j - 1);
        div += (fp - fm) / prm.dx;
    }
    out[idx] = mu[idx] - prm.dt * div;
}

template <class BFn>
void fv_step_serial(std::span<const double> mu, std::span<double> out, const FvStepParams& prm,
                    const BFn& drift) {
    const std::ptrdiff_t n = prm.n;
    if (prm.dim == 1) {
        for (std::ptrdiff_t i = 0; i < n; ++i) fv_step_cell(mu.data(), out.data(), prm, drift, i, 0);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i)
            for (std::ptrdiff_t j = 0; j < n; ++j)
                fv_step_cell(mu.data(), out.data(), prm, drift, i, j);
    }
}

template <class BFn>
void fv_step_omp(std::span<const double> mu, std::span<double> out, const FvStepParams& prm,
                 const BFn& drift) {
    const std::ptrdiff_t n = prm.n;
    if (prm.dim == 1) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) fv_step_cell(mu.data(), out.data(), prm, drift, i, 0);
    } else {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            for (std::ptrdiff_t j = 0; j < n; ++j)
                fv_step_cell(mu.data(), out.data(), prm, drift, i, j);
    }
}

}  // namespace vvrate::kernels
