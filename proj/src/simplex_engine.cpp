#include "remezgen/simplex_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "remezgen/errors.hpp"

namespace remez {

void NodeSet::flip_signs() {
    for (auto& s : signs) s = -s;
    oriented = -oriented;
}

SignedNullResult signed_null(const Eigen::MatrixXd& vectors, bool strict) {
    const int dim = static_cast<int>(vectors.rows());
    const int m = static_cast<int>(vectors.cols());
    if (m != dim + 1) throw std::invalid_argument("signed_null expects dim+1 vectors in R^dim");

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(vectors, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cond = sv(dim - 1) > 0 ? sv(0) / sv(dim - 1)
                                        : std::numeric_limits<double>::infinity();
    if (!(sv(dim - 1) > 1e-13 * sv(0)))
        throw DegeneracyError("node vectors are rank deficient", cond);

    Eigen::VectorXd x = svd.matrixV().col(m - 1);
    const double xmax = x.cwiseAbs().maxCoeff();
    if (strict && x.cwiseAbs().minCoeff() < 1e-12 * xmax)
        throw DegeneracyError("degenerate node set: a kernel component vanishes", cond);

    SignedNullResult out;
    out.cond = cond;
    out.signs.resize(m);
    out.weights.resize(m);
    for (int i = 0; i < m; ++i) {
        out.signs[i] = x(i) >= 0.0 ? 1 : -1;
        out.weights(i) = std::abs(x(i));
    }
    out.weights /= out.weights.sum();
    return out;
}

LevelSolution solve_level_system(NodeSet& nodes, const TargetFn& f, const SystemPtr& system,
                                 const ConstraintSet* constraints, double cond_limit) {
    const int n = system->n();
    const int r = constraints ? constraints->r() : 0;
    const int m = nodes.size();
    if (m != n - r + 1) {
        std::ostringstream msg;
        msg << "level system expects " << n - r + 1 << " nodes, got " << m;
        throw std::invalid_argument(msg.str());
    }

    Eigen::MatrixXd A(n + 1, n + 1);
    Eigen::VectorXd rhs(n + 1);
    for (int i = 0; i < m; ++i) {
        A.row(i).head(n) = system->moment_vector(nodes.points[i]).transpose();
        A(i, n) = -static_cast<double>(nodes.signs[i]);
        rhs(i) = f(nodes.points[i]);
    }
    for (int j = 0; j < r; ++j) {
        A.row(m + j).head(n) = constraints->functionals()[j].realized.transpose();
        A(m + j, n) = 0.0;
        rhs(m + j) = constraints->targets()[j];
    }

    // equilibrate: rows at far-out nodes can be orders of magnitude smaller
    // than the rest without the system being genuinely singular
    for (int i = 0; i < n + 1; ++i) {
        const double scale = std::max(A.row(i).cwiseAbs().maxCoeff(), 1e-300);
        A.row(i) /= scale;
        rhs(i) /= scale;
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const double rcond = lu.rcond();
    if (!(rcond > 1.0 / cond_limit))
        throw DegeneracyError("level system is singular or ill-conditioned",
                              rcond > 0 ? 1.0 / rcond : std::numeric_limits<double>::infinity());

    Eigen::VectorXd sol = lu.solve(rhs);
    LevelSolution out;
    out.cond = 1.0 / rcond;
    out.level = sol(n);
    if (out.level < 0.0) {
        nodes.flip_signs();
        out.level = -out.level;
        out.flipped = true;
    }
    out.poly = Poly(sol.head(n), system);
    return out;
}

ExchangeResult exchange_vertex(const NodeSet& nodes, const Barycentric& alpha,
                               const Eigen::VectorXd& a0, double t0, int sign0) {
    const int m = nodes.size();
    const int dim = nodes.dim();
    if (m != dim + 1) throw std::invalid_argument("exchange needs dim+1 nodes");
    if (alpha.weights.size() != m) throw std::invalid_argument("weight/node size mismatch");

    // particular solution of a0 = sum x_i a_i; the choice of particular
    // solution shifts all ratios uniformly and leaves the argmax unchanged
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(nodes.oriented);
    if (qr.rank() < dim)
        throw DegeneracyError("ratio system is singular: node vectors do not span R^dim");
    Eigen::VectorXd x = qr.solve(a0);

    const double wmax = alpha.weights.maxCoeff();
    int s = 0;
    double best = -std::numeric_limits<double>::infinity();
    double second = best;
    for (int i = 0; i < m; ++i) {
        const double w = std::max(alpha.weights(i), 1e-14 * std::max(wmax, 1e-300));
        const double ratio = x(i) / w;
        if (ratio > best) {
            second = best;
            best = ratio;
            s = i;
        } else if (ratio > second) {
            second = ratio;
        }
    }

    ExchangeResult out;
    out.replaced = s;
    out.tie_degenerate = (best - second) <= 1e-10 * (1.0 + std::abs(best));
    out.nodes = nodes;
    out.nodes.points[s] = t0;
    out.nodes.signs[s] = sign0;
    out.nodes.oriented.col(s) = a0;

    // fresh certificate on the new node set
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(out.nodes.oriented, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (!(sv(dim - 1) > 1e-14 * sv(0)))
        throw DegeneracyError("exchange produced a rank-deficient node system",
                              sv(dim - 1) > 0 ? sv(0) / sv(dim - 1)
                                              : std::numeric_limits<double>::infinity());
    Eigen::VectorXd y = svd.matrixV().col(m - 1);
    if (y.sum() < 0.0) y = -y;
    const double ymax = y.cwiseAbs().maxCoeff();
    if (y.minCoeff() < -1e-9 * ymax)
        throw DegeneracyError("origin left the simplex hull after the exchange");
    y = y.cwiseMax(0.0);
    out.alpha.weights = y / y.sum();
    out.alpha0 = out.alpha.weights(s);
    return out;
}

CertificateReport verify_certificate(const NodeSet& nodes, const Barycentric& alpha, const Poly& p,
                                     const TargetFn& f, double dist, double tol) {
    CertificateReport rep;
    const int m = nodes.size();

    double min_mod = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i)
        min_mod = std::min(min_mod, std::abs(p.eval(nodes.points[i]) - f(nodes.points[i])));
    rep.modulus_min = dist > 0 ? min_mod / dist : min_mod;
    rep.equal_modulus = min_mod >= (1.0 - tol) * dist;

    rep.weight_min = alpha.weights.minCoeff();
    rep.weight_sum = alpha.weights.sum();
    rep.weights_valid = rep.weight_min >= -tol && std::abs(rep.weight_sum - 1.0) <= tol;

    const double amax = nodes.oriented.cwiseAbs().maxCoeff();
    const double resid = (nodes.oriented * alpha.weights).cwiseAbs().maxCoeff();
    rep.null_residual = amax > 0 ? resid / amax : resid;
    rep.null_combination = resid <= tol * std::max(amax, 1e-300);
    return rep;
}

}  // namespace remez
