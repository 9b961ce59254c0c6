#include "vvrate/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace vvrate::kernels {

namespace {

struct Chunk {
    std::size_t begin, end;
};

Chunk chunk_of(std::size_t n, int tid, int nthreads) {
    const std::size_t per = (n + nthreads - 1) / nthreads;
    const std::size_t b = std::min(n, per * static_cast<std::size_t>(tid));
    return {b, std::min(n, b + per)};
}

}  // namespace

double max_serial(std::span<const double> a) {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : a) m = std::max(m, v);
    return m;
}

double max_omp(std::span<const double> a) {
#ifdef _OPENMP
    const int nt = omp_get_max_threads();
    std::vector<double> partial(static_cast<std::size_t>(nt),
                                -std::numeric_limits<double>::infinity());
#pragma omp parallel num_threads(nt)
    {
        const int tid = omp_get_thread_num();
        const auto c = chunk_of(a.size(), tid, nt);
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t i = c.begin; i < c.end; ++i) m = std::max(m, a[i]);
        partial[static_cast<std::size_t>(tid)] = m;
    }
    return max_serial(partial);
#else
    return max_serial(a);
#endif
}

double sumexp_serial(std::span<const double> a, double shift) {
    double s = 0.0;
    for (double v : a) s += std::exp(v - shift);
    return s;
}

double sumexp_omp(std::span<const double> a, double shift) {
#ifdef _OPENMP
    const int nt = omp_get_max_threads();
    std::vector<double> partial(static_cast<std::size_t>(nt), 0.0);
#pragma omp parallel num_threads(nt)
    {
        const int tid = omp_get_thread_num();
        const auto c = chunk_of(a.size(), tid, nt);
        double s = 0.0;
        for (std::size_t i = c.begin; i < c.end; ++i) s += std::exp(a[i] - shift);
        partial[static_cast<std::size_t>(tid)] = s;
    }
    double s = 0.0;
    for (double p : partial) s += p;
    return s;
#else
    return sumexp_serial(a, shift);
#endif
}

}  // namespace vvrate::kernels
