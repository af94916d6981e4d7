#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "remezgen/constraints.hpp"
#include "remezgen/function_system.hpp"

namespace fixtures {

using namespace remez;

// three Gaussian bumps of width 3 on [0, 8]
inline SystemPtr gauss3() {
    return std::make_shared<FunctionSystem>(
        std::vector<BasisPtr>{std::make_shared<GaussianBasis>(1.0, 3.0),
                              std::make_shared<GaussianBasis>(5.0, 3.0),
                              std::make_shared<GaussianBasis>(7.0, 3.0)},
        Domain::interval(0.0, 8.0));
}

// quadratic trend plus a frequency-modulated ripple
inline double gauss3_target(double t) {
    return 0.1 * (t - 5.0) * (t - 5.0) + 0.5 * (t - 4.0) +
           std::sin(0.4 * t * t * std::cos(0.5 * t));
}

// nine damped exponential-trigonometric modes on [0, +inf)
inline SystemPtr exp9() {
    return std::make_shared<FunctionSystem>(
        std::vector<BasisPtr>{std::make_shared<ExpTrigBasis>(-0.1, 0, 0.2, true),
                              std::make_shared<ExpTrigBasis>(-0.1, 0, 0.2, false),
                              std::make_shared<ExpTrigBasis>(-0.1, 0, 0.3, true),
                              std::make_shared<ExpTrigBasis>(-0.1, 0, 0.3, false),
                              std::make_shared<ExpTrigBasis>(-0.5, 0, 0.4, true),
                              std::make_shared<ExpTrigBasis>(-0.5, 0, 0.4, false),
                              std::make_shared<ExpTrigBasis>(-0.9, 0, 1.0, true),
                              std::make_shared<ExpTrigBasis>(-0.9, 0, 1.0, false),
                              std::make_shared<ExpTrigBasis>(-0.3, 0, 0.0, true)},
        Domain::half_line(0.0));
}

// signal = mode combination + kinked noise bump at t = 7
inline TargetFn exp9_target(const SystemPtr& sys) {
    const std::vector<double> a = {1, 1, 4, -7, -3, -2, 1, 5, 6};
    return [sys, a](double t) {
        double s = 8.0 * std::exp(-std::abs(t - 7.0) / 2.0);
        for (int k = 0; k < 9; ++k) s += a[k] * sys->eval(k, t);
        return s;
    };
}

// count well-separated alternance clusters, ignoring near-zero weights
inline int essential_points(const std::vector<double>& points, const Eigen::VectorXd& weights,
                            double weight_tol, double cluster_gap) {
    double wmax = weights.size() ? weights.maxCoeff() : 0.0;
    int count = 0;
    double prev = 0.0;
    bool have_prev = false;
    for (int i = 0; i < static_cast<int>(points.size()); ++i) {
        if (weights(i) < weight_tol * wmax) continue;
        if (!have_prev || points[i] - prev > cluster_gap) ++count;
        prev = points[i];
        have_prev = true;
    }
    return count;
}

}  // namespace fixtures
