#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <vector>

#include "remezgen/spline.hpp"

namespace remez {

using TargetFn = std::function<double(double)>;

struct Domain {
    enum class Kind { Interval, HalfLine };

    Kind kind = Kind::Interval;
    double a = -1.0;
    double b = 1.0;  // ignored for half-lines

    static Domain interval(double a, double b);
    static Domain half_line(double a);

    bool contains(double t) const;
    bool is_half_line() const { return kind == Kind::HalfLine; }
};

// One basis function phi_i with exact derivative evaluation.
class BasisFunction {
  public:
    virtual ~BasisFunction() = default;

    virtual double eval(double t) const = 0;
    // order >= 1; throws CapabilityError above max_derivative_order()
    virtual double derivative(double t, int order) const = 0;
    virtual int max_derivative_order() const { return 1 << 20; }
    virtual bool decays_at_infinity() const = 0;
};

using BasisPtr = std::shared_ptr<const BasisFunction>;

// t^exponent
class PowerBasis final : public BasisFunction {
  public:
    explicit PowerBasis(int exponent);
    double eval(double t) const override;
    double derivative(double t, int order) const override;
    bool decays_at_infinity() const override { return false; }
    int exponent() const { return exponent_; }

  private:
    int exponent_;
};

// t^power * e^{rate t} * cos(freq t)  (or sin)
class ExpTrigBasis final : public BasisFunction {
  public:
    ExpTrigBasis(double rate, int power, double freq, bool is_cos);
    double eval(double t) const override;
    double derivative(double t, int order) const override;
    bool decays_at_infinity() const override { return rate_ < 0.0; }

    double rate() const { return rate_; }
    int power() const { return power_; }
    double freq() const { return freq_; }
    bool is_cos() const { return cos_; }

  private:
    double rate_;
    int power_;
    double freq_;
    bool cos_;
};

// e^{-(t-center)^2 / width^2}
class GaussianBasis final : public BasisFunction {
  public:
    GaussianBasis(double center, double width);
    double eval(double t) const override;
    double derivative(double t, int order) const override;
    bool decays_at_infinity() const override { return true; }
    double center() const { return center_; }
    double width() const { return width_; }

  private:
    double center_;
    double width_;
};

// 1 / (1 + (t-center)^2 / width^2)
class CauchyBasis final : public BasisFunction {
  public:
    CauchyBasis(double center, double width);
    double eval(double t) const override;
    double derivative(double t, int order) const override;
    bool decays_at_infinity() const override { return true; }
    double center() const { return center_; }
    double width() const { return width_; }

  private:
    double center_;
    double width_;
};

// interpolating not-a-knot cubic spline through (knots, values)
class SplineBasis final : public BasisFunction {
  public:
    SplineBasis(std::vector<double> knots, std::vector<double> values);
    double eval(double t) const override;
    double derivative(double t, int order) const override;
    bool decays_at_infinity() const override { return false; }
    const CubicSpline& spline() const { return spline_; }

  private:
    CubicSpline spline_;
};

// cos(scale * lambda(t) * t) with the triangular frequency ramp
// lambda(t) = 4 + 32 t for t <= 1/2 and 4 + 32 (1 - t) otherwise.
class ChirpBasis final : public BasisFunction {
  public:
    explicit ChirpBasis(double scale);
    double eval(double t) const override;
    double derivative(double t, int order) const override;
    int max_derivative_order() const override { return 2; }
    bool decays_at_infinity() const override { return false; }
    double scale() const { return scale_; }

  private:
    double phase(double t) const;
    double phase_d1(double t) const;
    double phase_d2(double t) const;
    double scale_;
};

// The system Phi = {phi_1..phi_n} on a domain K.  Immutable after
// construction; linear independence is verified on a 10n-point grid.
class FunctionSystem {
  public:
    FunctionSystem(std::vector<BasisPtr> basis, Domain domain);

    int n() const { return static_cast<int>(basis_.size()); }
    const Domain& domain() const { return domain_; }
    const std::vector<BasisPtr>& basis() const { return basis_; }

    double eval(int k, double t) const { return basis_[k]->eval(t); }

    // u(t) = (phi_1(t), ..., phi_n(t))^T; throws DomainError outside K
    Eigen::VectorXd moment_vector(double t) const;
    Eigen::VectorXd derivative_vector(double t, int order) const;

    void require_in_domain(double t) const;

  private:
    std::vector<BasisPtr> basis_;
    Domain domain_;
};

using SystemPtr = std::shared_ptr<const FunctionSystem>;

struct Poly {
    Eigen::VectorXd coeffs;
    SystemPtr system;

    Poly() = default;
    Poly(Eigen::VectorXd c, SystemPtr s);

    double eval(double t) const;
    double derivative(double t, int order) const;
};

// Compact truncation [a, T] of a half-line domain: beyond T every basis
// function and the target stay below tail_tol.  T is located by a geometric
// scan followed by bisection on the decay envelope.
double truncate_halfline(const FunctionSystem& system, const TargetFn& f, double tail_tol,
                         double horizon = 1e6);

}  // namespace remez
