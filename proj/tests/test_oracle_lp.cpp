#include <doctest.h>

#include <cmath>

#include "remezgen/oracle_lp.hpp"
#include "remezgen/solver.hpp"

#include "fixtures.hpp"

using namespace remez;

TEST_CASE("uniform grid spans the interval inclusively") {
    auto g = uniform_grid(-1.0, 1.0, 5);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == -1.0);
    CHECK(g.back() == 1.0);
    CHECK(g[2] == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("three-point grids solve the hand examples exactly") {
    auto sys1 = std::make_shared<FunctionSystem>(
        std::vector<BasisPtr>{std::make_shared<PowerBasis>(0), std::make_shared<PowerBasis>(1)},
        Domain::interval(-1.0, 1.0));
    auto f1 = [](double t) { return t * t; };
    auto r1 = grid_chebyshev(sys1, f1, {-1.0, 0.0, 1.0});
    CHECK(r1.value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r1.coeffs(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r1.coeffs(1) == doctest::Approx(0.0).epsilon(1e-12));

    auto sys2 = std::make_shared<FunctionSystem>(
        std::vector<BasisPtr>{std::make_shared<PowerBasis>(2), std::make_shared<PowerBasis>(1)},
        Domain::interval(-1.0, 1.0));
    auto f2 = [](double t) { return t * t * t * t + t * t * t - 0.25; };
    auto r2 = grid_chebyshev(sys2, f2, {-1.0, 0.5, 1.0});
    CHECK(r2.value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r2.coeffs(0) == doctest::Approx(0.75).epsilon(1e-10));
    CHECK(r2.coeffs(1) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("dense grids reproduce the continuum optimum") {
    auto sys = std::make_shared<FunctionSystem>(
        std::vector<BasisPtr>{std::make_shared<PowerBasis>(2), std::make_shared<PowerBasis>(1)},
        Domain::interval(-1.0, 1.0));
    auto f = [](double t) { return t * t * t * t + t * t * t - 0.25; };
    auto r = grid_chebyshev(sys, f, uniform_grid(-1.0, 1.0, 2001));
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("a target inside the span yields value zero") {
    auto sys = std::make_shared<FunctionSystem>(
        std::vector<BasisPtr>{std::make_shared<PowerBasis>(2), std::make_shared<PowerBasis>(1)},
        Domain::interval(-1.0, 1.0));
    auto f = [](double t) { return 0.5 * t * t + 0.25 * t; };
    auto r = grid_chebyshev(sys, f, uniform_grid(-1.0, 1.0, 101));
    CHECK(std::abs(r.value) < 1e-10);
    CHECK(r.coeffs(0) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(r.coeffs(1) == doctest::Approx(0.25).epsilon(1e-8));
}

TEST_CASE("constrained grid LP enforces the functional") {
    auto sys = std::make_shared<FunctionSystem>(
        std::vector<BasisPtr>{std::make_shared<PowerBasis>(0), std::make_shared<PowerBasis>(1),
                              std::make_shared<PowerBasis>(2)},
        Domain::interval(-1.0, 1.0));
    ConstraintSet cs(sys, {point_eval_functional(*sys, 0.0)}, {0.0});
    auto f = [](double t) { return t * t * t; };
    auto r = grid_chebyshev(sys, f, uniform_grid(-1.0, 1.0, 2001), &cs);
    CHECK(r.value == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(std::abs(r.coeffs(0)) < 1e-9);  // p(0) = 0
}

TEST_CASE("grid value is a lower bound and the recovered p is grid-optimal") {
    auto sys = fixtures::gauss3();
    auto grid = uniform_grid(0.0, 8.0, 501);
    auto r = grid_chebyshev(sys, fixtures::gauss3_target, grid);
    ApproxResult res = solve(sys, fixtures::gauss3_target);
    CHECK(r.value <= res.upper + 1e-9);
    // no coefficient vector beats the LP value on its own grid
    Poly p(r.coeffs, sys);
    double sup = 0.0;
    for (double t : grid) sup = std::max(sup, std::abs(p.eval(t) - fixtures::gauss3_target(t)));
    CHECK(sup == doctest::Approx(r.value).epsilon(1e-8));
}

TEST_CASE("agreement with the iterative solver on a smooth fixture") {
    auto sys = fixtures::gauss3();
    auto r = grid_chebyshev(sys, fixtures::gauss3_target, uniform_grid(0.0, 8.0, 2001));
    ApproxResult res = solve(sys, fixtures::gauss3_target);
    CHECK(std::abs(r.value - res.upper) < 1e-4);
}

TEST_CASE("undersized grids are rejected") {
    auto sys = fixtures::gauss3();
    CHECK_THROWS_AS(grid_chebyshev(sys, fixtures::gauss3_target, {0.0, 1.0}),
                    std::invalid_argument);
}
