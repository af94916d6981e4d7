#include <doctest.h>

#include <cmath>

#include "remezgen/errors.hpp"
#include "remezgen/random_systems.hpp"

using namespace remez;

TEST_CASE("random spline systems are deterministic in the seed") {
    auto a = random_spline_system(10, 3, 42);
    auto b = random_spline_system(10, 3, 42);
    auto c = random_spline_system(10, 3, 43);
    bool differs = false;
    for (double t = -1.0; t <= 1.0; t += 0.01) {
        for (int k = 0; k < 3; ++k) {
            CHECK(a->eval(k, t) == b->eval(k, t));
            differs = differs || a->eval(k, t) != c->eval(k, t);
        }
    }
    CHECK(differs);
}

TEST_CASE("each basis spline interpolates its own sampled values") {
    auto sys = random_spline_system(8, 4, 7);
    for (const auto& bp : sys->basis()) {
        auto spline = std::dynamic_pointer_cast<const SplineBasis>(bp);
        REQUIRE(spline);
        const auto& knots = spline->spline().knots();
        const auto& values = spline->spline().values();
        REQUIRE(knots.size() == 8);
        for (size_t i = 0; i < knots.size(); ++i) {
            CHECK(knots[i] >= -1.0);
            CHECK(knots[i] <= 1.0);
            if (i + 1 < knots.size()) CHECK(knots[i] < knots[i + 1]);
            CHECK(spline->eval(knots[i]) == doctest::Approx(values[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("generation succeeds across a seed sweep") {
    int ok = 0;
    for (unsigned seed = 0; seed < 100; ++seed) {
        try {
            random_spline_system(10, 3, seed);
            ++ok;
        } catch (const DegeneracyError&) {
        }
    }
    CHECK(ok >= 95);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(random_spline_system(3, 2, 1), std::invalid_argument);
    StatsConfig cfg;
    cfg.trials = 0;
    CHECK_THROWS_AS(degeneracy_stats(cfg), std::invalid_argument);
}

TEST_CASE("single-trial statistics classify without averaging artifacts") {
    StatsConfig cfg;
    cfg.m = 10;
    cfg.n = 3;
    cfg.trials = 1;
    cfg.seed = 5;
    cfg.problem = StatsConfig::Problem::AbsTarget;
    StatsRow row = degeneracy_stats(cfg);
    CHECK(row.trials == 1);
    CHECK(row.degenerate + row.nondegenerate + row.failures == 1);
    CHECK(row.share_degenerate + row.share_nondegenerate ==
          doctest::Approx(row.failures == 1 ? 0.0 : 1.0).epsilon(1e-12));
}

TEST_CASE("statistics are deterministic and internally consistent") {
    StatsConfig cfg;
    cfg.m = 10;
    cfg.n = 3;
    cfg.trials = 25;
    cfg.seed = 11;
    cfg.problem = StatsConfig::Problem::ConstrainedZero;
    StatsRow a = degeneracy_stats(cfg);
    StatsRow b = degeneracy_stats(cfg);
    CHECK(a.degenerate == b.degenerate);
    CHECK(a.failures == b.failures);
    CHECK(a.mean_iters_degenerate == b.mean_iters_degenerate);
    CHECK(a.mean_iters_nondegenerate == b.mean_iters_nondegenerate);
    CHECK(a.degenerate + a.nondegenerate + a.failures == 25);
}

TEST_CASE("csv row mirrors the table layout") {
    StatsRow row;
    row.m = 10;
    row.n = 3;
    row.trials = 100;
    row.share_degenerate = 0.25;
    row.share_nondegenerate = 0.75;
    const std::string line = stats_csv_row(row, problem_label(StatsConfig::Problem::AbsTarget));
    CHECK(line.find("abs,10,3,100") == 0);
    CHECK(stats_csv_header().find("deg_share") != std::string::npos);
}
