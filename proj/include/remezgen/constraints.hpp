#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "remezgen/function_system.hpp"

namespace remez {

// A linear functional ell on P, realized as the vector ell in R^n with
// ell(p) = <ell, coeffs(p)>.
struct LinearFunctional {
    enum class Kind { PointEval, Derivative, CoeffCombination, Integral };

    Kind kind = Kind::PointEval;
    double t = 0.0;             // PointEval / Derivative
    int order = 0;              // Derivative
    Eigen::VectorXd combo;      // CoeffCombination
    Eigen::VectorXd realized;   // the vector ell in R^n

    double apply(const Poly& p) const { return realized.dot(p.coeffs); }
};

LinearFunctional point_eval_functional(const FunctionSystem& system, double t);
LinearFunctional derivative_functional(const FunctionSystem& system, double t, int order);
LinearFunctional coeff_combination_functional(const FunctionSystem& system,
                                              const Eigen::VectorXd& combo);
// integral of p over the (possibly truncated) domain; closed forms for
// exp-trig, gaussian, cauchy and power families, adaptive quadrature otherwise
LinearFunctional integral_functional(const FunctionSystem& system);

// r independent functionals with target values, plus an orthonormal basis of
// L-perp used to project oriented moment vectors.
class ConstraintSet {
  public:
    ConstraintSet(SystemPtr system, std::vector<LinearFunctional> functionals,
                  std::vector<double> targets);

    int r() const { return static_cast<int>(functionals_.size()); }
    const SystemPtr& system() const { return system_; }
    const std::vector<LinearFunctional>& functionals() const { return functionals_; }
    const std::vector<double>& targets() const { return targets_; }

    // rows are the realized vectors ell_j
    const Eigen::MatrixXd& functional_matrix() const { return L_; }
    // n x (n-r), orthonormal columns spanning L-perp
    const Eigen::MatrixXd& perp_basis() const { return perp_; }

    // coordinates of the orthogonal projection of a onto L-perp
    Eigen::VectorXd project(const Eigen::VectorXd& a) const { return perp_.transpose() * a; }

    // ell_j(p) - b_j for all j
    Eigen::VectorXd residuals(const Poly& p) const;

  private:
    SystemPtr system_;
    std::vector<LinearFunctional> functionals_;
    std::vector<double> targets_;
    Eigen::MatrixXd L_;
    Eigen::MatrixXd perp_;
};

}  // namespace remez
