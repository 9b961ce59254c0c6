#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "vvrate/hopf_lax.hpp"

using namespace vvrate;

namespace {

ProblemSpec cone_problem(int k, int d, double T = 1.0) {
    ProblemSpec p;
    p.dimension = d;
    p.horizon = T;
    p.terminal = TerminalData::cone(k);
    p.hamiltonian = HamiltonianSpec::pure_quadratic();
    return p;
}

ProblemSpec sampled_problem(const SampledGrid& g, double T = 1.0) {
    ProblemSpec p;
    p.dimension = g.dimension;
    p.horizon = T;
    p.terminal = TerminalData::grid_sampled(g);
    p.hamiltonian = HamiltonianSpec::pure_quadratic();
    return p;
}

}  // namespace

TEST_CASE("cone k=1 d=1 at the tip") {
    auto res = eval_hopf_lax(cone_problem(1, 1), 0.0, {0.0}, 1e-7);
    CHECK(res.value == doctest::Approx(-0.5).epsilon(1e-6));
    REQUIRE(res.minimizers.size() == 2);
    std::vector<double> ys = {res.minimizers[0][0], res.minimizers[1][0]};
    std::sort(ys.begin(), ys.end());
    CHECK(ys[0] == doctest::Approx(-1.0).epsilon(1e-4));
    CHECK(ys[1] == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("cone k=1 d=2 off the tip") {
    auto res = eval_hopf_lax(cone_problem(1, 2), 0.0, {3.0, 0.0}, 1e-7);
    CHECK(res.value == doctest::Approx(-3.5).epsilon(1e-6));
    REQUIRE(res.minimizers.size() == 1);
    CHECK(res.minimizers[0][0] == doctest::Approx(4.0).epsilon(1e-4));
    CHECK(res.minimizers[0][1] == doctest::Approx(0.0).epsilon(1e-4));
}

TEST_CASE("affine closed form") {
    ProblemSpec p;
    p.dimension = 2;
    p.horizon = 2.0;
    p.terminal = TerminalData::affine({1.5, -0.5}, 0.3);
    p.hamiltonian = HamiltonianSpec::pure_quadratic();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        Vec x = {u(rng), u(rng)};
        const double t = 0.5 * (u(rng) + 2.0);  // in [0,2)
        const double tau = p.horizon - t;
        const double expect = 1.5 * x[0] - 0.5 * x[1] + 0.3 - 0.5 * tau * (1.5 * 1.5 + 0.25);
        CHECK(eval_hopf_lax(p, t, x, 1e-7).value == doctest::Approx(expect).epsilon(1e-8));
    }
}

TEST_CASE("t = T returns the terminal datum, t > T throws") {
    auto p = cone_problem(1, 1);
    CHECK(eval_hopf_lax(p, 1.0, {0.25}, 1e-7).value == doctest::Approx(-0.25));
    CHECK_THROWS_AS(eval_hopf_lax(p, 1.5, {0.0}, 1e-7), std::invalid_argument);
}

TEST_CASE("semigroup residual") {
    ProblemSpec aff;
    aff.dimension = 1;
    aff.horizon = 1.0;
    aff.terminal = TerminalData::affine({1.0}, 0.0);
    aff.hamiltonian = HamiltonianSpec::pure_quadratic();
    CHECK(semigroup_residual(aff, 0.1, 0.6, {0.4}) <= 1e-8);
    CHECK(semigroup_residual(cone_problem(1, 1), 0.0, 0.5, {0.0}) <= 1e-6);
    CHECK(semigroup_residual(cone_problem(1, 1), 0.3, 0.3 + 1e-9, {0.2}, 1e-6) <= 1e-5);
}

TEST_CASE("monotonicity in the terminal data") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        SampledGrid g1, g2;
        g1.dimension = g2.dimension = 1;
        g1.half_width = g2.half_width = 4.0;
        g1.cells_per_axis = g2.cells_per_axis = 32;
        g1.values.resize(33);
        g2.values.resize(33);
        for (int i = 0; i < 33; ++i) {
            const double v = u(rng);
            g1.values[static_cast<std::size_t>(i)] = v;
            g2.values[static_cast<std::size_t>(i)] = v + 0.3 * (u(rng) + 1.0);  // g2 >= g1
        }
        const Vec x = {u(rng)};
        const double v1 = eval_hopf_lax(sampled_problem(g1), 0.5, x, 1e-5).value;
        const double v2 = eval_hopf_lax(sampled_problem(g2), 0.5, x, 1e-5).value;
        CHECK(v1 <= v2 + 1e-9);
    }
}

TEST_CASE("lipschitz in x") {
    auto p = cone_problem(1, 2);
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        Vec x = {u(rng), u(rng)}, y = {u(rng), u(rng)};
        const double vx = eval_hopf_lax(p, 0.0, x, 1e-6).value;
        const double vy = eval_hopf_lax(p, 0.0, y, 1e-6).value;
        CHECK(std::abs(vx - vy) <= dist(x, y) + 1e-5);
    }
}

TEST_CASE("semiconcavity generation at eps = 0") {
    auto p = cone_problem(1, 1);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    std::uniform_real_distribution<double> uh(-0.3, 0.3);
    const double tol = 1e-6;
    for (int trial = 0; trial < 200; ++trial) {
        const double t = 0.5, tau = p.horizon - t;
        Vec x = {u(rng)};
        Vec h = {uh(rng)};
        const double c = eval_hopf_lax(p, t, x, tol).value;
        const double pl = eval_hopf_lax(p, t, {x[0] + h[0]}, tol).value;
        const double mi = eval_hopf_lax(p, t, {x[0] - h[0]}, tol).value;
        CHECK(pl + mi - 2.0 * c <= h[0] * h[0] / tau + 10.0 * tol);
    }
}

TEST_CASE("minimizers attain the value within tolerance") {
    auto p = cone_problem(1, 2);
    auto res = eval_hopf_lax(p, 0.25, {0.4, -1.0}, 1e-6);
    const double tau = p.horizon - 0.25;
    for (const auto& y : res.minimizers) {
        const double attained =
            p.terminal_value(y) + dist_sq(y, {0.4, -1.0}) / (2.0 * tau);
        CHECK(attained <= res.value + 2.0 * res.tolerance_used);
    }
}
