#pragma once

#include <string>

#include "remezgen/function_system.hpp"
#include "remezgen/solver.hpp"

namespace remez {

// n random not-a-knot cubic splines on [-1,1]: m sorted uniform knots, m
// uniform values each.  Dependent draws are resampled (up to 20 retries).
SystemPtr random_spline_system(int m, int n, unsigned int seed);

// a single random spline target generated the same way as the basis functions
TargetFn random_spline_target(int m, unsigned int seed);

struct StatsConfig {
    enum class Problem { ConstrainedZero, AbsTarget, RandomTarget };

    int m = 10;      // knots per spline
    int n = 3;       // system size
    int trials = 100;
    unsigned int seed = 1;
    double delta = 0.05;  // degeneracy threshold on min |q(t0)|
    Problem problem = Problem::ConstrainedZero;
    SolverOptions solver;  // keep_trace is forced on internally
};

struct StatsRow {
    int m = 0;
    int n = 0;
    int trials = 0;
    int failures = 0;  // generation/solver aborts and non-converged runs
    int degenerate = 0;
    int nondegenerate = 0;
    double share_degenerate = 0.0;
    double share_nondegenerate = 0.0;
    double mean_iters_degenerate = 0.0;
    double mean_iters_nondegenerate = 0.0;
    double mean_time_degenerate = 0.0;  // seconds
    double mean_time_nondegenerate = 0.0;
};

StatsRow degeneracy_stats(const StatsConfig& cfg);

std::string stats_csv_header();
std::string stats_csv_row(const StatsRow& row, const std::string& problem_label);
std::string problem_label(StatsConfig::Problem problem);

}  // namespace remez
