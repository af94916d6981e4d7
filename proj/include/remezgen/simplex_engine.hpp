#pragma once

#include <Eigen/Dense>
#include <vector>

#include "remezgen/constraints.hpp"
#include "remezgen/function_system.hpp"

namespace remez {

// Alternance candidate nodes tau_i with signs sigma_i and oriented vectors
// a_i = sigma_i * v(tau_i), where v is the (possibly projected) moment vector.
struct NodeSet {
    std::vector<double> points;
    std::vector<int> signs;
    Eigen::MatrixXd oriented;  // dim x m, column i = a_i

    int size() const { return static_cast<int>(points.size()); }
    int dim() const { return static_cast<int>(oriented.rows()); }

    void flip_signs();
};

// Barycentric coordinates of the origin in the simplex co{a_i}.
struct Barycentric {
    Eigen::VectorXd weights;
};

struct SignedNullResult {
    std::vector<int> signs;
    Eigen::VectorXd weights;  // |x_i| normalized to sum 1
    double cond;              // sigma_max / sigma_min of the vector matrix
};

// Solves sum_i x_i u_i = 0 for dim+1 vectors in R^dim and splits the kernel
// vector into signs and normalized weights.  With strict=true any vanishing
// component (a degenerate n-subset) raises DegeneracyError; strict=false
// tolerates zero weights, which legitimately appear at degenerate alternances.
SignedNullResult signed_null(const Eigen::MatrixXd& vectors, bool strict = true);

struct LevelSolution {
    Poly poly;
    double level = 0.0;   // d >= 0
    bool flipped = false; // whether all signs were negated to make d >= 0
    double cond = 0.0;
};

// Solves the level system p(tau_i) - f(tau_i) = sigma_i d (plus the constraint
// rows ell_j(p) = b_j when given).  Flips the signs in `nodes` when the raw d
// comes out negative.
LevelSolution solve_level_system(NodeSet& nodes, const TargetFn& f, const SystemPtr& system,
                                 const ConstraintSet* constraints = nullptr,
                                 double cond_limit = 1e12);

struct ExchangeResult {
    int replaced = -1;          // index s of the vertex that left
    NodeSet nodes;
    Barycentric alpha;
    double alpha0 = 0.0;        // weight of the entering vertex
    bool tie_degenerate = false;
};

// Vertex exchange: replaces node s (picked by the maximal ratio x_s/alpha_s)
// by t0 with oriented vector a0, preserving origin containment.  The new
// certificate is recomputed from scratch on the new node set.
ExchangeResult exchange_vertex(const NodeSet& nodes, const Barycentric& alpha,
                               const Eigen::VectorXd& a0, double t0, int sign0);

struct CertificateReport {
    bool equal_modulus = false;
    bool weights_valid = false;
    bool null_combination = false;
    double modulus_min = 0.0;      // min_i |p(tau_i)-f(tau_i)| / dist
    double weight_min = 0.0;
    double weight_sum = 0.0;
    double null_residual = 0.0;    // ||sum alpha_i a_i||_inf / max_i ||a_i||_inf

    bool pass() const { return equal_modulus && weights_valid && null_combination; }
};

CertificateReport verify_certificate(const NodeSet& nodes, const Barycentric& alpha, const Poly& p,
                                     const TargetFn& f, double dist, double tol);

}  // namespace remez
