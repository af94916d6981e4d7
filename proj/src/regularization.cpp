#include "remezgen/regularization.hpp"

#include <cmath>
#include <limits>

#include "remezgen/errors.hpp"

namespace remez {

VanishingPoly vanishing_polynomial(const NodeSet& nodes, int i1, int i2, const SystemPtr& system,
                                   const ConstraintSet* constraints) {
    const int n = system->n();
    const int m = nodes.size();
    const int r = constraints ? constraints->r() : 0;
    if (i1 == i2 || i1 < 0 || i2 < 0 || i1 >= m || i2 >= m)
        throw std::invalid_argument("vanishing polynomial needs two distinct node indices");

    // zero conditions at the remaining m-2 nodes plus the r annihilation rows
    Eigen::MatrixXd A(m - 2 + r, n);
    int row = 0;
    for (int s = 0; s < m; ++s) {
        if (s == i1 || s == i2) continue;
        A.row(row++) = system->moment_vector(nodes.points[s]).transpose();
    }
    for (int j = 0; j < r; ++j) A.row(row++) = constraints->functionals()[j].realized.transpose();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const int rows = static_cast<int>(A.rows());
    // a 1-D null space needs full row rank of the (n-1) x n condition matrix
    if (rows != n - 1 || !(sv(rows - 1) > 1e-12 * sv(0)))
        throw DegeneracyError("vanishing-polynomial null space is not one-dimensional");

    Eigen::VectorXd q = svd.matrixV().col(n - 1);
    for (int k = 0; k < n; ++k) {
        if (std::abs(q(k)) > 1e-12) {
            if (q(k) < 0) q = -q;
            break;
        }
    }

    VanishingPoly out;
    out.i1 = i1;
    out.i2 = i2;
    out.poly = Poly(q, system);
    return out;
}

std::vector<VanishingPoly> all_vanishing_polynomials(const NodeSet& nodes, const SystemPtr& system,
                                                     const ConstraintSet* constraints) {
    std::vector<VanishingPoly> qs;
    const int m = nodes.size();
    qs.reserve(m * (m - 1) / 2);
    for (int i1 = 0; i1 < m; ++i1)
        for (int i2 = i1 + 1; i2 < m; ++i2)
            qs.push_back(vanishing_polynomial(nodes, i1, i2, system, constraints));
    return qs;
}

double g_objective(double t, const std::vector<VanishingPoly>& qs) {
    double sum = 0.0;
    for (const auto& q : qs) {
        const double v = q.eval(t);
        const double term = 1.0 / (v * v);
        if (!std::isfinite(term)) return std::numeric_limits<double>::infinity();
        sum += term;
    }
    return std::isfinite(sum) ? sum : std::numeric_limits<double>::infinity();
}

}  // namespace remez
