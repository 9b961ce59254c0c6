#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "vvrate/search.hpp"

using namespace vvrate;
using vvrate::detail::minimize_on_ball;
using vvrate::detail::pattern_search;

TEST_CASE("minimize a shifted quadratic") {
    auto obj = [](const Vec& y) {
        return (y[0] - 0.3) * (y[0] - 0.3) + (y[1] + 0.7) * (y[1] + 0.7);
    };
    auto res = minimize_on_ball(obj, {0.0, 0.0}, 2.0, 0.25, 1e-7, 0.2, 1e-3, 1e-6);
    CHECK(res.value == doctest::Approx(0.0).epsilon(1e-10));
    REQUIRE(res.minimizers.size() == 1);
    CHECK(res.minimizers[0][0] == doctest::Approx(0.3).epsilon(1e-5));
    CHECK(res.minimizers[0][1] == doctest::Approx(-0.7).epsilon(1e-5));
}

TEST_CASE("symmetric double well reports both minimizers") {
    auto obj = [](const Vec& y) {
        const double s = y[0] * y[0] - 1.0;
        return s * s;
    };
    auto res = minimize_on_ball(obj, {0.0}, 2.0, 0.1, 1e-8, 0.3, 1e-2, 1e-7);
    CHECK(res.value == doctest::Approx(0.0).epsilon(1e-10));
    REQUIRE(res.minimizers.size() == 2);
    CHECK(std::abs(std::abs(res.minimizers[0][0]) - 1.0) <= 1e-5);
    CHECK(std::abs(std::abs(res.minimizers[1][0]) - 1.0) <= 1e-5);
    CHECK(res.minimizers[0][0] * res.minimizers[1][0] < 0.0);
}

TEST_CASE("nonsmooth kink handled by pattern search") {
    auto obj = [](const Vec& y) { return std::abs(y[0] - 0.123456) ; };
    Vec y = {1.0};
    const double v = pattern_search(obj, y, 0.5, 1e-9);
    CHECK(v <= 1e-7);
    CHECK(y[0] == doctest::Approx(0.123456).epsilon(1e-6));
}

TEST_CASE("refinement never increases the minimum estimate") {
    auto obj = [](const Vec& y) { return std::sin(3.0 * y[0]) + 0.1 * y[0] * y[0]; };
    double prev = 1e300;
    for (double step_min : {1e-2, 1e-4, 1e-6, 1e-8}) {
        auto res = minimize_on_ball(obj, {0.0}, 3.0, 0.5, step_min, 0.5, 1e-3, 1e-6);
        CHECK(res.value <= prev + 1e-15);
        prev = res.value;
    }
}
