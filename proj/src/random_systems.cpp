#include "remezgen/random_systems.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "remezgen/constraints.hpp"
#include "remezgen/errors.hpp"

namespace remez {

namespace {

std::shared_ptr<SplineBasis> make_spline(std::mt19937& rng, int m) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> knots(m), values(m);
    for (;;) {
        for (auto& t : knots) t = unit(rng);
        std::sort(knots.begin(), knots.end());
        bool ok = true;
        for (int i = 0; i + 1 < m; ++i) ok = ok && knots[i + 1] - knots[i] > 1e-6;
        if (ok) break;  // re-draw near-coincident knots
    }
    for (auto& v : values) v = unit(rng);
    return std::make_shared<SplineBasis>(std::move(knots), std::move(values));
}

}  // namespace

SystemPtr random_spline_system(int m, int n, unsigned int seed) {
    if (m < 4) throw std::invalid_argument("cubic not-a-knot splines need m >= 4 knots");
    if (n < 1) throw std::invalid_argument("system size must be positive");

    std::mt19937 rng(seed);
    for (int attempt = 0; attempt < 20; ++attempt) {
        std::vector<BasisPtr> basis;
        for (int k = 0; k < n; ++k) basis.push_back(make_spline(rng, m));
        try {
            return std::make_shared<FunctionSystem>(basis, Domain::interval(-1.0, 1.0));
        } catch (const DegeneracyError&) {
            // dependent draw; resample the whole system
        }
    }
    throw DegeneracyError("random spline system stayed dependent after 20 resamples");
}

TargetFn random_spline_target(int m, unsigned int seed) {
    if (m < 4) throw std::invalid_argument("cubic not-a-knot splines need m >= 4 knots");
    std::mt19937 rng(seed);
    auto spline = make_spline(rng, m);
    return [spline](double t) { return spline->eval(t); };
}

StatsRow degeneracy_stats(const StatsConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");

    // derive independent per-trial seeds from the master seed
    std::mt19937 master(cfg.seed);
    std::vector<unsigned int> trial_seeds(cfg.trials);
    for (auto& s : trial_seeds) s = master();

    StatsRow row;
    row.m = cfg.m;
    row.n = cfg.n;
    row.trials = cfg.trials;

    double iters_deg = 0.0, iters_non = 0.0, time_deg = 0.0, time_non = 0.0;

    for (int trial = 0; trial < cfg.trials; ++trial) {
        const auto start = std::chrono::steady_clock::now();
        try {
            SystemPtr system = random_spline_system(cfg.m, cfg.n, trial_seeds[trial]);
            SolverOptions opts = cfg.solver;
            opts.keep_trace = true;
            opts.seed = trial_seeds[trial];

            ApproxResult res;
            switch (cfg.problem) {
                case StatsConfig::Problem::ConstrainedZero: {
                    ConstraintSet cs(system,
                                     {coeff_combination_functional(
                                         *system, Eigen::VectorXd::Ones(system->n()))},
                                     {1.0});
                    res = solve_constrained(
                        system, [](double) { return 0.0; }, cs, opts);
                    break;
                }
                case StatsConfig::Problem::AbsTarget:
                    res = solve(
                        system, [](double t) { return std::abs(t); }, opts);
                    break;
                case StatsConfig::Problem::RandomTarget: {
                    TargetFn f = random_spline_target(cfg.m, trial_seeds[trial] ^ 0x9e3779b9u);
                    res = solve(system, f, opts);
                    break;
                }
            }
            const double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            if (!res.converged) {
                ++row.failures;
                continue;
            }
            bool degenerate = false;
            for (const auto& t : res.trace) degenerate = degenerate || t.min_q < cfg.delta;
            if (degenerate) {
                ++row.degenerate;
                iters_deg += res.iterations;
                time_deg += elapsed;
            } else {
                ++row.nondegenerate;
                iters_non += res.iterations;
                time_non += elapsed;
            }
        } catch (const std::exception&) {
            ++row.failures;
        }
    }

    const int classified = row.degenerate + row.nondegenerate;
    if (classified > 0) {
        row.share_degenerate = static_cast<double>(row.degenerate) / classified;
        row.share_nondegenerate = static_cast<double>(row.nondegenerate) / classified;
    }
    if (row.degenerate > 0) {
        row.mean_iters_degenerate = iters_deg / row.degenerate;
        row.mean_time_degenerate = time_deg / row.degenerate;
    }
    if (row.nondegenerate > 0) {
        row.mean_iters_nondegenerate = iters_non / row.nondegenerate;
        row.mean_time_nondegenerate = time_non / row.nondegenerate;
    }
    return row;
}

std::string stats_csv_header() {
    return "problem,m,n,trials,failures,"
           "nondeg_share,nondeg_iters,nondeg_time_sec,"
           "deg_share,deg_iters,deg_time_sec";
}

std::string stats_csv_row(const StatsRow& row, const std::string& problem_label) {
    std::ostringstream out;
    out << problem_label << ',' << row.m << ',' << row.n << ',' << row.trials << ','
        << row.failures << ',' << row.share_nondegenerate << ',' << row.mean_iters_nondegenerate
        << ',' << row.mean_time_nondegenerate << ',' << row.share_degenerate << ','
        << row.mean_iters_degenerate << ',' << row.mean_time_degenerate;
    return out.str();
}

std::string problem_label(StatsConfig::Problem problem) {
    switch (problem) {
        case StatsConfig::Problem::ConstrainedZero:
            return "constrained-zero";
        case StatsConfig::Problem::AbsTarget:
            return "abs";
        case StatsConfig::Problem::RandomTarget:
            return "random";
    }
    return "unknown";
}

}  // namespace remez
