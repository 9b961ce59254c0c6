#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "vvrate/problems.hpp"

using namespace vvrate;

TEST_CASE("eval_hamiltonian examples") {
    auto pure = HamiltonianSpec::pure_quadratic();
    CHECK(eval_hamiltonian(pure, {1.0, -2.0}, {0.0, 0.0}) == doctest::Approx(0.0));
    CHECK(eval_hamiltonian(pure, {0.3, 7.0}, {3.0, 4.0}) == doctest::Approx(12.5));

    // b(x) = x: H((1,0),(2,0)) = -1*2 + 2 = 0
    auto linear = HamiltonianSpec::with_drift(
        DriftSpec::affine({1.0, 0.0, 0.0, 1.0}, {0.0, 0.0}));
    CHECK(eval_hamiltonian(linear, {1.0, 0.0}, {2.0, 0.0}) == doctest::Approx(0.0));
}

TEST_CASE("eval_lagrangian examples") {
    auto pure = HamiltonianSpec::pure_quadratic();
    CHECK(eval_lagrangian(pure, {0.0}, {0.0}) == doctest::Approx(0.0));
    CHECK(eval_lagrangian(pure, {5.0, 5.0}, {1.0, 1.0}) == doctest::Approx(1.0));
    auto shifted = HamiltonianSpec::with_drift(DriftSpec::constant({2.0, 0.0}));
    CHECK(eval_lagrangian(shifted, {9.0, -9.0}, {0.0, 0.0}) == doctest::Approx(2.0));
}

TEST_CASE("legendre duality on random triples") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    auto ham = HamiltonianSpec::with_drift(DriftSpec::sinusoidal(2, 0.8, 1.3));
    for (int trial = 0; trial < 1000; ++trial) {
        Vec x = {u(rng), u(rng)}, a = {u(rng), u(rng)}, p = {u(rng), u(rng)};
        const double lhs = eval_lagrangian(ham, x, a) + eval_hamiltonian(ham, x, p);
        CHECK(lhs >= -dot(a, p) - 1e-10);
        // equality at p = b(x) - a
        Vec b = ham.drift->eval(x);
        Vec pstar = {b[0] - a[0], b[1] - a[1]};
        const double tight = eval_lagrangian(ham, x, a) + eval_hamiltonian(ham, x, pstar);
        CHECK(std::abs(tight + dot(a, pstar)) <= 1e-10);
    }
}

TEST_CASE("hamiltonian convex in p along random segments") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    auto ham = HamiltonianSpec::with_drift(DriftSpec::affine({0.5}, {0.2}));
    for (int trial = 0; trial < 500; ++trial) {
        Vec x = {u(rng)}, p = {u(rng)}, q = {u(rng)};
        Vec mid = {0.5 * (p[0] + q[0])};
        CHECK(eval_hamiltonian(ham, x, mid) <=
              0.5 * (eval_hamiltonian(ham, x, p) + eval_hamiltonian(ham, x, q)) + 1e-12);
    }
}

TEST_CASE("cone data is 1-Lipschitz") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    auto g = TerminalData::cone(2);
    for (int trial = 0; trial < 1000; ++trial) {
        Vec x = {u(rng), u(rng), u(rng)}, y = {u(rng), u(rng), u(rng)};
        CHECK(std::abs(g.eval(x) - g.eval(y)) <= dist(x, y) + 1e-14);
    }
}

TEST_CASE("assumption_constants examples") {
    ProblemSpec cone;
    cone.dimension = 2;
    cone.terminal = TerminalData::cone(1);
    auto c1 = assumption_constants(cone, 2.0);
    CHECK(c1.grad_bound == doctest::Approx(1.0));
    CHECK(c1.semiconcavity == doctest::Approx(0.0));
    CHECK(c1.convexity_lower == doctest::Approx(1.0));
    CHECK(c1.convexity_upper == doctest::Approx(1.0));

    ProblemSpec aff;
    aff.dimension = 2;
    aff.terminal = TerminalData::affine({0.0, 3.0}, 0.0);
    auto c2 = assumption_constants(aff, 5.0);
    CHECK(c2.grad_bound == doctest::Approx(3.0));
    CHECK(c2.semiconcavity == doctest::Approx(0.0));

    ProblemSpec ns;
    ns.dimension = 1;
    ns.terminal = TerminalData::neg_sqrt();
    ns.hamiltonian = HamiltonianSpec::with_drift(DriftSpec::zero(1));
    auto c3 = assumption_constants(ns, 1.0);
    CHECK(c3.grad_bound == doctest::Approx(1.0));
    CHECK(c3.semiconcavity == doctest::Approx(1.0));
    CHECK(c3.has_semiconcavity);
}

TEST_CASE("grid sampled data interpolates and signals unknown semiconcavity") {
    SampledGrid g;
    g.dimension = 1;
    g.half_width = 1.0;
    g.cells_per_axis = 16;
    g.values.resize(17);
    for (int i = 0; i < 17; ++i) g.values[static_cast<std::size_t>(i)] = std::abs(g.node_coord(i));
    auto data = TerminalData::grid_sampled(g);
    CHECK(data.eval({0.5}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(data.eval({0.53125}) == doctest::Approx(0.53125).epsilon(1e-12));
    CHECK(data.eval({3.0}) == doctest::Approx(1.0));  // constant extension
    CHECK(data.lipschitz_const() == doctest::Approx(1.0));
    CHECK(!data.semiconcavity_const().has_value());
}

TEST_CASE("validation errors") {
    ProblemSpec p;
    p.dimension = 1;
    p.terminal = TerminalData::cone(2);
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.terminal = TerminalData::cone(1);
    p.horizon = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.horizon = 1.0;
    p.hamiltonian = HamiltonianSpec::with_drift(DriftSpec::zero(2));
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    CHECK_THROWS_AS(TerminalData::cone(0), std::invalid_argument);
    auto pure = HamiltonianSpec::pure_quadratic();
    CHECK_THROWS_AS(eval_hamiltonian(pure, {1.0, 2.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("drift catalog bounds") {
    auto sin2 = DriftSpec::sinusoidal(2, 0.7, 3.0);
    CHECK(sin2.first_derivative_bound() == doctest::Approx(2.1));
    CHECK(sin2.sup_norm_on_cube(10.0) <= 0.7 * std::sqrt(2.0) + 1e-12);
    auto aff = DriftSpec::affine({1.0, 2.0, 0.0, 1.0}, {5.0, 0.0});
    Vec b = aff.eval({1.0, 1.0});
    CHECK(b[0] == doctest::Approx(8.0));
    CHECK(b[1] == doctest::Approx(1.0));
}
