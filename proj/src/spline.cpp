#include "remezgen/spline.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>

namespace remez {

CubicSpline::CubicSpline(std::vector<double> knots, std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
    const int m = static_cast<int>(knots_.size());
    if (m < 4) throw std::invalid_argument("cubic not-a-knot spline needs at least 4 knots");
    if (values_.size() != knots_.size())
        throw std::invalid_argument("knot/value arrays must have equal length");
    for (int i = 0; i + 1 < m; ++i)
        if (!(knots_[i] < knots_[i + 1]))
            throw std::invalid_argument("knots must be strictly increasing");

    // Solve for second derivatives M_i at the knots.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    auto h = [&](int i) { return knots_[i + 1] - knots_[i]; };
    for (int i = 1; i + 1 < m; ++i) {
        A(i, i - 1) = h(i - 1) / 6.0;
        A(i, i) = (h(i - 1) + h(i)) / 3.0;
        A(i, i + 1) = h(i) / 6.0;
        rhs(i) = (values_[i + 1] - values_[i]) / h(i) - (values_[i] - values_[i - 1]) / h(i - 1);
    }
    // not-a-knot: third derivative continuous across the second and
    // second-to-last knots
    A(0, 0) = 1.0 / h(0);
    A(0, 1) = -1.0 / h(0) - 1.0 / h(1);
    A(0, 2) = 1.0 / h(1);
    A(m - 1, m - 3) = 1.0 / h(m - 3);
    A(m - 1, m - 2) = -1.0 / h(m - 3) - 1.0 / h(m - 2);
    A(m - 1, m - 1) = 1.0 / h(m - 2);

    Eigen::VectorXd M = A.partialPivLu().solve(rhs);

    a_.resize(m - 1);
    b_.resize(m - 1);
    c_.resize(m - 1);
    d_.resize(m - 1);
    for (int i = 0; i + 1 < m; ++i) {
        const double hi = h(i);
        a_[i] = values_[i];
        b_[i] = (values_[i + 1] - values_[i]) / hi - hi * (2.0 * M(i) + M(i + 1)) / 6.0;
        c_[i] = M(i) / 2.0;
        d_[i] = (M(i + 1) - M(i)) / (6.0 * hi);
    }
}

int CubicSpline::segment(double t) const {
    const int m = static_cast<int>(knots_.size());
    if (t <= knots_.front()) return 0;
    if (t >= knots_[m - 2]) return m - 2;
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    return static_cast<int>(it - knots_.begin()) - 1;
}

double CubicSpline::eval(double t) const {
    const int i = segment(t);
    const double dt = t - knots_[i];
    return a_[i] + dt * (b_[i] + dt * (c_[i] + dt * d_[i]));
}

double CubicSpline::derivative(double t, int order) const {
    if (order <= 0) return eval(t);
    const int i = segment(t);
    const double dt = t - knots_[i];
    switch (order) {
        case 1: return b_[i] + dt * (2.0 * c_[i] + 3.0 * dt * d_[i]);
        case 2: return 2.0 * c_[i] + 6.0 * dt * d_[i];
        case 3: return 6.0 * d_[i];
        default: return 0.0;
    }
}

}  // namespace remez
