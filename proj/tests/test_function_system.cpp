#include <doctest.h>

#include <cmath>

#include "remezgen/errors.hpp"
#include "remezgen/function_system.hpp"

using namespace remez;

namespace {

double fd_derivative(const BasisFunction& b, double t, int order, double h = 1e-5) {
    if (order == 1) return (b.eval(t + h) - b.eval(t - h)) / (2 * h);
    return (fd_derivative(b, t + h, order - 1, h) - fd_derivative(b, t - h, order - 1, h)) /
           (2 * h);
}

}  // namespace

TEST_CASE("domain membership") {
    Domain iv = Domain::interval(-1.0, 2.0);
    CHECK(iv.contains(-1.0));
    CHECK(iv.contains(2.0));
    CHECK(!iv.contains(2.0001));
    Domain hl = Domain::half_line(1.0);
    CHECK(hl.contains(1.0));
    CHECK(hl.contains(1e9));
    CHECK(!hl.contains(0.999));
    CHECK_THROWS_AS(Domain::interval(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("power basis evaluation and derivatives") {
    PowerBasis p3(3);
    CHECK(p3.eval(2.0) == 8.0);
    CHECK(p3.derivative(2.0, 1) == 12.0);
    CHECK(p3.derivative(2.0, 2) == 12.0);
    CHECK(p3.derivative(2.0, 3) == 6.0);
    CHECK(p3.derivative(2.0, 4) == 0.0);
    PowerBasis p0(0);
    CHECK(p0.eval(5.0) == 1.0);
    CHECK(p0.derivative(5.0, 1) == 0.0);
}

TEST_CASE("exp-trig basis matches closed form and finite differences") {
    ExpTrigBasis b(-0.5, 1, 0.4, true);  // t e^{-t/2} cos(0.4 t)
    const double t = 1.7;
    CHECK(b.eval(t) == doctest::Approx(t * std::exp(-0.5 * t) * std::cos(0.4 * t)).epsilon(1e-14));
    CHECK(b.derivative(t, 1) == doctest::Approx(fd_derivative(b, t, 1)).epsilon(1e-7));
    CHECK(b.derivative(t, 2) == doctest::Approx(fd_derivative(b, t, 2)).epsilon(1e-5));
    CHECK(b.decays_at_infinity());
    CHECK(!ExpTrigBasis(0.1, 0, 1.0, false).decays_at_infinity());
}

TEST_CASE("gaussian and cauchy derivatives match finite differences") {
    GaussianBasis g(1.5, 2.0);
    CauchyBasis c(0.5, 1.5);
    for (double t : {-0.3, 0.9, 2.4}) {
        CHECK(g.derivative(t, 1) == doctest::Approx(fd_derivative(g, t, 1)).epsilon(1e-7));
        CHECK(g.derivative(t, 2) == doctest::Approx(fd_derivative(g, t, 2)).epsilon(1e-5));
        CHECK(c.derivative(t, 1) == doctest::Approx(fd_derivative(c, t, 1)).epsilon(1e-7));
        CHECK(c.derivative(t, 2) == doctest::Approx(fd_derivative(c, t, 2)).epsilon(1e-5));
    }
}

TEST_CASE("chirp basis ramps its frequency and differentiates") {
    ChirpBasis b(2.0);  // cos(2 lambda(t) t)
    auto lambda = [](double t) { return t <= 0.5 ? 4.0 + 32.0 * t : 4.0 + 32.0 * (1.0 - t); };
    for (double t : {0.1, 0.3, 0.7, 0.9})
        CHECK(b.eval(t) == doctest::Approx(std::cos(2.0 * lambda(t) * t)).epsilon(1e-14));
    CHECK(b.derivative(0.2, 1) == doctest::Approx(fd_derivative(b, 0.2, 1)).epsilon(1e-6));
    CHECK_THROWS_AS(b.derivative(0.2, 3), CapabilityError);
}

TEST_CASE("moment vector and domain enforcement") {
    auto sys = std::make_shared<FunctionSystem>(
        std::vector<BasisPtr>{std::make_shared<PowerBasis>(0), std::make_shared<PowerBasis>(2)},
        Domain::interval(-1.0, 1.0));
    Eigen::VectorXd u = sys->moment_vector(0.5);
    CHECK(u(0) == 1.0);
    CHECK(u(1) == 0.25);
    CHECK_THROWS_AS(sys->moment_vector(1.5), DomainError);
}

TEST_CASE("dependent systems are rejected") {
    auto t1 = std::make_shared<PowerBasis>(1);
    std::vector<BasisPtr> deps{t1, t1};
    CHECK_THROWS_AS(FunctionSystem(deps, Domain::interval(-1.0, 1.0)), DegeneracyError);
}

TEST_CASE("half-line systems must decay") {
    std::vector<BasisPtr> bad{std::make_shared<PowerBasis>(1)};
    CHECK_THROWS_AS(FunctionSystem(bad, Domain::half_line(0.0)), std::invalid_argument);
}

TEST_CASE("half-line truncation bounds the tail") {
    auto sys = std::make_shared<FunctionSystem>(
        std::vector<BasisPtr>{std::make_shared<ExpTrigBasis>(-0.3, 0, 0.0, true),
                              std::make_shared<ExpTrigBasis>(-1.0, 0, 2.0, true)},
        Domain::half_line(0.0));
    auto f = [](double t) { return std::exp(-0.2 * t); };
    const double T = truncate_halfline(*sys, f, 1e-10);
    CHECK(T > 0.0);
    for (double t : {T, T + 5.0, T + 50.0}) {
        CHECK(std::abs(sys->eval(0, t)) <= 1e-10);
        CHECK(std::abs(sys->eval(1, t)) <= 1e-10);
        CHECK(std::abs(f(t)) <= 1e-10);
    }
}

TEST_CASE("poly evaluation is the coefficient combination") {
    auto sys = std::make_shared<FunctionSystem>(
        std::vector<BasisPtr>{std::make_shared<PowerBasis>(0), std::make_shared<PowerBasis>(1)},
        Domain::interval(-1.0, 1.0));
    Eigen::VectorXd c(2);
    c << 2.0, -3.0;
    Poly p(c, sys);
    CHECK(p.eval(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p.derivative(0.5, 1) == doctest::Approx(-3.0).epsilon(1e-12));
}
