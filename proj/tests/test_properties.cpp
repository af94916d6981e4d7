#include <doctest.h>

#include <cmath>
#include <random>

#include "remezgen/errors.hpp"
#include "remezgen/oracle_lp.hpp"
#include "remezgen/regularization.hpp"
#include "remezgen/solver.hpp"

using namespace remez;

namespace {

constexpr int kInstances = 200;

struct Instance {
    SystemPtr system;
    TargetFn target;
};

// random Gaussian-mixture systems on [0, 8] with smooth bump-plus-trend targets
Instance random_instance(std::mt19937& rng, int n_lo = 2, int n_hi = 4) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (;;) {
        const int n = n_lo + static_cast<int>(rng() % (n_hi - n_lo + 1));
        std::vector<BasisPtr> basis;
        for (int k = 0; k < n; ++k)
            basis.push_back(
                std::make_shared<GaussianBasis>(0.5 + 7.0 * U(rng), 1.5 + 2.0 * U(rng)));
        SystemPtr sys;
        try {
            sys = std::make_shared<FunctionSystem>(basis, Domain::interval(0.0, 8.0));
        } catch (const DegeneracyError&) {
            continue;
        }
        const double amp = 1.0 + 2.0 * U(rng);
        const double ctr = 8.0 * U(rng);
        const double wid = 1.0 + 2.0 * U(rng);
        const double slope = 0.4 * U(rng);
        const double off = 0.5 + 2.0 * U(rng);
        Instance inst;
        inst.system = sys;
        inst.target = [amp, ctr, wid, slope, off](double t) {
            return amp * std::exp(-(t - ctr) * (t - ctr) / (wid * wid)) + slope * t - off;
        };
        return inst;
    }
}

struct NodeFixture {
    SystemPtr system;
    NodeSet nodes;
};

NodeFixture random_nodes(std::mt19937& rng) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (;;) {
        Instance inst = random_instance(rng, 3, 5);
        const int n = inst.system->n();
        const int m = n + 1;
        std::vector<double> pts(m);
        for (int i = 0; i < m; ++i) pts[i] = 8.0 * (i + 0.2 + 0.6 * U(rng)) / m;
        Eigen::MatrixXd V(n, m);
        for (int i = 0; i < m; ++i) V.col(i) = inst.system->moment_vector(pts[i]);
        try {
            SignedNullResult sn = signed_null(V);
            NodeFixture fix;
            fix.system = inst.system;
            fix.nodes.points = pts;
            fix.nodes.signs = sn.signs;
            fix.nodes.oriented.resize(n, m);
            for (int i = 0; i < m; ++i) fix.nodes.oriented.col(i) = sn.signs[i] * V.col(i);
            return fix;
        } catch (const DegeneracyError&) {
        }
    }
}

const std::vector<std::pair<Instance, ApproxResult>>& solved_instances() {
    static const auto runs = [] {
        std::vector<std::pair<Instance, ApproxResult>> out;
        std::mt19937 rng(2024);
        while (static_cast<int>(out.size()) < kInstances) {
            Instance inst = random_instance(rng);
            out.emplace_back(inst, solve(inst.system, inst.target));
        }
        return out;
    }();
    return runs;
}

}  // namespace

TEST_CASE("every solve converges with a valid certificate") {
    for (const auto& [inst, res] : solved_instances()) {
        CHECK(res.converged);
        CHECK(res.certificate.pass());
        CHECK(res.certificate.weight_sum == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(res.certificate.weight_min >= -1e-8);
        CHECK(res.certificate.null_residual < 1e-8);
    }
}

TEST_CASE("lower bounds never exceed upper bounds and both are monotone") {
    for (const auto& [inst, res] : solved_instances()) {
        double prev_b = -1e300, prev_B = 1e300;
        for (const auto& row : res.trace) {
            CHECK(row.b >= prev_b - 1e-12);
            CHECK(row.B <= prev_B + 1e-12);
            CHECK(row.b <= row.B + 1e-12);
            prev_b = row.b;
            prev_B = row.B;
        }
        CHECK(res.lower <= res.upper + 1e-12);
    }
}

TEST_CASE("per-iteration contraction of the level value") {
    std::mt19937 rng(7711);
    int steps = 0;
    SolverOptions opts;
    while (steps < kInstances) {
        Instance inst = random_instance(rng);
        SolverState state;
        try {
            state = initialize(inst.system, inst.target, opts, 0.0, 8.0, nullptr);
        } catch (const std::exception&) {
            continue;
        }
        for (int k = 0; k < 40; ++k) {
            const double d_pre = state.d;
            const double r_pre = state.r;
            bool stepped;
            try {
                stepped = iterate_once(state, inst.system, inst.target, opts, nullptr);
            } catch (const std::exception&) {
                break;
            }
            if (!stepped) break;
            const auto& row = state.trace.back();
            const double gain = row.mode == StepMode::Plain
                                    ? row.alpha0 * (r_pre - d_pre)
                                    : (1.0 - opts.nu) * row.alpha0 * (r_pre - d_pre);
            CHECK(state.d >= d_pre + gain - 1e-7 * (1.0 + std::abs(r_pre)));
            ++steps;
        }
    }
    CHECK(steps >= kInstances);
}

TEST_CASE("|q(t)| equals the brute-force hyperplane distance") {
    std::mt19937 rng(909);
    std::uniform_real_distribution<double> U(0.0, 8.0);
    for (int it = 0; it < kInstances; ++it) {
        NodeFixture fix = random_nodes(rng);
        const int m = fix.nodes.size();
        std::vector<VanishingPoly> qs;
        try {
            qs = all_vanishing_polynomials(fix.nodes, fix.system);
        } catch (const DegeneracyError&) {
            continue;
        }
        const double t = U(rng);
        for (const auto& q : qs) {
            Eigen::MatrixXd A(fix.system->n(), m - 2);
            int col = 0;
            for (int i = 0; i < m; ++i) {
                if (i == q.i1 || i == q.i2) continue;
                A.col(col++) = fix.system->moment_vector(fix.nodes.points[i]);
            }
            Eigen::VectorXd u = fix.system->moment_vector(t);
            const double dist = (u - A * A.colPivHouseholderQr().solve(u)).norm();
            CHECK(std::abs(q.eval(t)) == doctest::Approx(dist).epsilon(1e-9));
        }
    }
}

TEST_CASE("the aggregated objective sandwiches the minimal hyperplane distance") {
    std::mt19937 rng(1717);
    std::uniform_real_distribution<double> U(0.0, 8.0);
    for (int it = 0; it < kInstances; ++it) {
        NodeFixture fix = random_nodes(rng);
        std::vector<VanishingPoly> qs;
        try {
            qs = all_vanishing_polynomials(fix.nodes, fix.system);
        } catch (const DegeneracyError&) {
            continue;
        }
        const double t = U(rng);
        double rho = 1e300;
        for (const auto& q : qs) rho = std::min(rho, std::abs(q.eval(t)));
        const double g = g_objective(t, qs);
        if (!std::isfinite(g)) {
            CHECK(rho < 1e-9);
            continue;
        }
        const double N = static_cast<double>(qs.size());
        CHECK(rho >= 1.0 / std::sqrt(g) * (1.0 - 1e-9));
        CHECK(rho <= std::sqrt(N / g) * (1.0 + 1e-9));
    }
}

TEST_CASE("grid LP and the iterative solver agree on smooth instances") {
    for (const auto& [inst, res] : solved_instances()) {
        auto lp = grid_chebyshev(inst.system, inst.target, uniform_grid(0.0, 8.0, 2001));
        CHECK(std::abs(lp.value - res.upper) < 1e-4);
        CHECK(lp.value <= res.upper + 1e-9);  // grid optimum is a lower bound
    }
}

TEST_CASE("the distance is covariant under scaling and span shifts") {
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (const auto& [inst, res] : solved_instances()) {
        const double c = 0.5 + 2.5 * U(rng);
        const auto& target = inst.target;
        auto scaled = [c, target](double t) { return c * target(t); };
        SolverOptions scaled_opts;
        scaled_opts.epsilon *= c;  // scale the stopping rule along with the data
        ApproxResult res_scaled = solve(inst.system, scaled, scaled_opts);
        CHECK(std::abs(res_scaled.upper - c * res.upper) <= 1e-8 * (1.0 + c * res.upper));

        Eigen::VectorXd shift = Eigen::VectorXd::Zero(inst.system->n());
        shift(0) = 2.0 * U(rng) - 1.0;
        auto sys = inst.system;
        auto shifted = [sys, shift, target](double t) {
            return target(t) + shift(0) * sys->eval(0, t);
        };
        ApproxResult res_shifted = solve(inst.system, shifted);
        CHECK(std::abs(res_shifted.upper - res.upper) <= 1e-8 * (1.0 + res.upper));
    }
}
