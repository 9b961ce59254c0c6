#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "vvrate/kernels.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <class Fn>
double time_ms(int reps, const Fn& fn) {
    fn();  // warm up
    const auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) fn();
    const auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main() {
    using namespace vvrate::kernels;

    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    const std::size_t nred = 1 << 22;
    std::vector<double> a(nred);
    for (auto& v : a) v = u(rng);

    volatile double sink = 0.0;
    const double tmax_s = time_ms(20, [&] { sink = max_serial(a); });
    const double tmax_p = time_ms(20, [&] { sink = max_omp(a); });
    const double tsum_s = time_ms(20, [&] { sink = sumexp_serial(a, 1.0); });
    const double tsum_p = time_ms(20, [&] { sink = sumexp_omp(a, 1.0); });
    std::printf("max       n=%zu  serial %8.3f ms  omp %8.3f ms  speedup %.2fx\n", nred, tmax_s,
                tmax_p, tmax_s / tmax_p);
    std::printf("sumexp    n=%zu  serial %8.3f ms  omp %8.3f ms  speedup %.2fx\n", nred, tsum_s,
                tsum_p, tsum_s / tsum_p);

    HjbStepParams hp;
    hp.dt = 1e-4;
    hp.dx = 1e-2;
    hp.eps = 0.05;
    hp.sigma = 1.0;
    hp.x0 = -10.0;
    hp.n = 1400;
    hp.dim = 2;
    std::vector<double> grid(static_cast<std::size_t>(hp.n) * hp.n), out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = std::sin(0.01 * static_cast<double>(i));
    auto ham = [](const double* x, const double* p) {
        return -std::sin(x[0]) * p[0] + 0.5 * (p[0] * p[0] + p[1] * p[1]);
    };
    const double thjb_s = time_ms(5, [&] { hjb_step_serial<decltype(ham)>(grid, out, hp, ham); });
    const double thjb_p = time_ms(5, [&] { hjb_step_omp<decltype(ham)>(grid, out, hp, ham); });
    std::printf("hjb_step  n=%dx%d  serial %8.3f ms  omp %8.3f ms  speedup %.2fx\n", hp.n, hp.n,
                thjb_s, thjb_p, thjb_s / thjb_p);

    FvStepParams fp;
    fp.dt = 1e-5;
    fp.dx = 1e-2;
    fp.eps = 0.05;
    fp.x0 = -7.0;
    fp.n = 1400;
    fp.dim = 2;
    fp.s = 0.0;
    for (auto& v : grid) v = std::abs(v) + 0.1;
    auto drift = [](double, const double* x, int axis) { return axis == 0 ? -x[0] : 0.3 * x[1]; };
    const double tfv_s = time_ms(5, [&] { fv_step_serial<decltype(drift)>(grid, out, fp, drift); });
    const double tfv_p = time_ms(5, [&] { fv_step_omp<decltype(drift)>(grid, out, fp, drift); });
    std::printf("fv_step   n=%dx%d  serial %8.3f ms  omp %8.3f ms  speedup %.2fx\n", fp.n, fp.n,
                tfv_s, tfv_p, tfv_s / tfv_p);

    (void)sink;
    return 0;
}
