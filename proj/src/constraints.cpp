#include "remezgen/constraints.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "remezgen/errors.hpp"
#include "remezgen/quadrature.hpp"

namespace remez {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// antiderivative of t^s e^{zt} at t, for complex z != 0
std::complex<double> exp_poly_antideriv(std::complex<double> z, int s, double t) {
    std::complex<double> sum = 0.0;
    double fact = 1.0;  // s! / (s-k)!
    for (int k = 0; k <= s; ++k) {
        sum += (k % 2 == 0 ? 1.0 : -1.0) * fact * std::pow(t, s - k) / std::pow(z, k + 1);
        fact *= static_cast<double>(s - k);
    }
    return std::exp(z * t) * sum;
}

double integrate_basis(const BasisFunction& phi, const Domain& dom) {
    const bool half = dom.is_half_line();
    const double a = dom.a;

    if (auto* p = dynamic_cast<const PowerBasis*>(&phi)) {
        if (half) throw ConstraintError("integral of a power function diverges on a half-line");
        const int m = p->exponent();
        return (std::pow(dom.b, m + 1) - std::pow(a, m + 1)) / (m + 1.0);
    }
    if (auto* g = dynamic_cast<const GaussianBasis*>(&phi)) {
        const double w = g->width(), z = g->center();
        const double upper = half ? 1.0 : std::erf((dom.b - z) / w);
        return w * kSqrtPi / 2.0 * (upper - std::erf((a - z) / w));
    }
    if (auto* c = dynamic_cast<const CauchyBasis*>(&phi)) {
        const double w = c->width(), z = c->center();
        const double upper = half ? M_PI / 2.0 : std::atan((dom.b - z) / w);
        return w * (upper - std::atan((a - z) / w));
    }
    if (auto* e = dynamic_cast<const ExpTrigBasis*>(&phi)) {
        const std::complex<double> z(e->rate(), e->freq());
        if (std::abs(z) > 0) {
            const std::complex<double> upper =
                half ? std::complex<double>(0.0) : exp_poly_antideriv(z, e->power(), dom.b);
            const std::complex<double> val = upper - exp_poly_antideriv(z, e->power(), a);
            return e->is_cos() ? val.real() : val.imag();
        }
        // plain power fallback for rate == freq == 0
        if (half) throw ConstraintError("integral diverges on a half-line");
        const int s = e->power();
        const double val = (std::pow(dom.b, s + 1) - std::pow(a, s + 1)) / (s + 1.0);
        return e->is_cos() ? val : 0.0;
    }

    // generic family: adaptive quadrature, truncating a decaying tail first
    double hi;
    if (half) {
        if (!phi.decays_at_infinity())
            throw ConstraintError("integral over a half-line requires a decaying function");
        hi = a + 1.0;
        while (std::abs(phi.eval(hi)) > 1e-14 || std::abs(phi.eval(hi + 10.0)) > 1e-14) {
            hi = a + (hi - a) * 2.0;
            if (hi - a > 1e8) throw ConstraintError("tail truncation for the integral failed");
        }
    } else {
        hi = dom.b;
    }
    return integrate([&phi](double t) { return phi.eval(t); }, a, hi, 1e-11);
}

}  // namespace

LinearFunctional point_eval_functional(const FunctionSystem& system, double t) {
    LinearFunctional ell;
    ell.kind = LinearFunctional::Kind::PointEval;
    ell.t = t;
    ell.realized = system.moment_vector(t);
    return ell;
}

LinearFunctional derivative_functional(const FunctionSystem& system, double t, int order) {
    if (order < 1) throw std::invalid_argument("derivative functional needs order >= 1");
    LinearFunctional ell;
    ell.kind = LinearFunctional::Kind::Derivative;
    ell.t = t;
    ell.order = order;
    ell.realized = system.derivative_vector(t, order);
    return ell;
}

LinearFunctional coeff_combination_functional(const FunctionSystem& system,
                                              const Eigen::VectorXd& combo) {
    if (combo.size() != system.n())
        throw std::invalid_argument("coefficient combination has wrong length");
    LinearFunctional ell;
    ell.kind = LinearFunctional::Kind::CoeffCombination;
    ell.combo = combo;
    ell.realized = combo;
    return ell;
}

LinearFunctional integral_functional(const FunctionSystem& system) {
    LinearFunctional ell;
    ell.kind = LinearFunctional::Kind::Integral;
    ell.realized.resize(system.n());
    for (int k = 0; k < system.n(); ++k)
        ell.realized(k) = integrate_basis(*system.basis()[k], system.domain());
    return ell;
}

ConstraintSet::ConstraintSet(SystemPtr system, std::vector<LinearFunctional> functionals,
                             std::vector<double> targets)
    : system_(std::move(system)), functionals_(std::move(functionals)), targets_(std::move(targets)) {
    if (!system_) throw std::invalid_argument("constraint set needs a system");
    const int n = system_->n();
    const int r = this->r();
    if (r == 0) throw std::invalid_argument("constraint set must not be empty");
    if (targets_.size() != functionals_.size())
        throw std::invalid_argument("one target value per functional required");
    if (r >= n) throw ConstraintError("need r < n independent constraints");

    L_.resize(r, n);
    for (int j = 0; j < r; ++j) {
        if (functionals_[j].realized.size() != n)
            throw std::invalid_argument("realized functional vector has wrong length");
        if (!functionals_[j].realized.allFinite())
            throw ConstraintError("realized functional vector is not finite");
        L_.row(j) = functionals_[j].realized;
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> rank_qr(L_.transpose());
    rank_qr.setThreshold(1e-10);
    if (rank_qr.rank() < r)
        throw ConstraintError("constraint functionals are linearly dependent (rank deficient)");

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(L_.transpose());
    Eigen::MatrixXd Q = qr.householderQ();
    perp_ = Q.rightCols(n - r);

    // the projections of the basis functions onto L-perp must stay
    // independent; otherwise report a maximal independent subset of Phi
    const int grid = 10 * n;
    const double lo = system_->domain().a;
    const double hi =
        system_->domain().is_half_line() ? lo + 30.0 : system_->domain().b;
    Eigen::MatrixXd M(grid, n);
    for (int g = 0; g < grid; ++g) {
        const double t = lo + (hi - lo) * g / (grid - 1.0);
        for (int k = 0; k < n; ++k) M(g, k) = system_->eval(k, t);
    }
    Eigen::MatrixXd MP = M * (perp_ * perp_.transpose());
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> proj_qr(MP);
    proj_qr.setThreshold(1e-10);
    if (proj_qr.rank() < n - r) {
        std::ostringstream msg;
        msg << "projected basis functions are dependent; a maximal independent subset is {";
        const auto& perm = proj_qr.colsPermutation().indices();
        for (int k = 0; k < proj_qr.rank(); ++k) msg << (k ? ", " : "") << "phi_" << perm(k) + 1;
        msg << "}";
        throw ConstraintError(msg.str());
    }
}

Eigen::VectorXd ConstraintSet::residuals(const Poly& p) const {
    Eigen::VectorXd res(r());
    for (int j = 0; j < r(); ++j) res(j) = functionals_[j].apply(p) - targets_[j];
    return res;
}

}  // namespace remez
