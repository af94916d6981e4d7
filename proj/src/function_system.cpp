#include "remezgen/function_system.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "remezgen/errors.hpp"

namespace remez {

namespace {

// coefficients of a polynomial in w, lowest degree first
using PolyCoeffs = std::vector<double>;

double poly_at(const PolyCoeffs& p, double w) {
    double v = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * w + *it;
    return v;
}

PolyCoeffs poly_deriv(const PolyCoeffs& p) {
    PolyCoeffs d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<double>(k));
    if (d.empty()) d.push_back(0.0);
    return d;
}

}  // namespace

Domain Domain::interval(double a, double b) {
    if (!(std::isfinite(a) && std::isfinite(b) && a < b))
        throw std::invalid_argument("interval endpoints must be finite with a < b");
    return Domain{Kind::Interval, a, b};
}

Domain Domain::half_line(double a) {
    if (!std::isfinite(a)) throw std::invalid_argument("half-line origin must be finite");
    return Domain{Kind::HalfLine, a, std::numeric_limits<double>::infinity()};
}

bool Domain::contains(double t) const {
    const double tol = 1e-9 * (std::abs(a) + (is_half_line() ? 1.0 : std::abs(b)) + 1.0);
    if (is_half_line()) return t >= a - tol;
    return t >= a - tol && t <= b + tol;
}

PowerBasis::PowerBasis(int exponent) : exponent_(exponent) {
    if (exponent < 0) throw std::invalid_argument("power exponent must be >= 0");
}

double PowerBasis::eval(double t) const { return std::pow(t, exponent_); }

double PowerBasis::derivative(double t, int order) const {
    if (order < 1) throw std::invalid_argument("derivative order must be >= 1");
    if (order > exponent_) return 0.0;
    double c = 1.0;
    for (int k = 0; k < order; ++k) c *= static_cast<double>(exponent_ - k);
    return c * std::pow(t, exponent_ - order);
}

ExpTrigBasis::ExpTrigBasis(double rate, int power, double freq, bool is_cos)
    : rate_(rate), power_(power), freq_(freq), cos_(is_cos) {
    if (power < 0) throw std::invalid_argument("exp-trig power must be >= 0");
}

double ExpTrigBasis::eval(double t) const {
    const double trig = cos_ ? std::cos(freq_ * t) : std::sin(freq_ * t);
    return std::pow(t, power_) * std::exp(rate_ * t) * trig;
}

namespace {
struct QTerm {
    double c;
    int s;
    double a;
    double b;
    bool is_cos;
};

double qterm_eval(const QTerm& q, double t) {
    const double trig = q.is_cos ? std::cos(q.b * t) : std::sin(q.b * t);
    return q.c * std::pow(t, q.s) * std::exp(q.a * t) * trig;
}

std::vector<QTerm> qterm_derivative(const std::vector<QTerm>& terms) {
    std::vector<QTerm> out;
    for (const auto& q : terms) {
        if (q.s > 0) out.push_back({q.c * q.s, q.s - 1, q.a, q.b, q.is_cos});
        if (q.a != 0.0) out.push_back({q.c * q.a, q.s, q.a, q.b, q.is_cos});
        if (q.b != 0.0) {
            // d/dt cos(bt) = -b sin(bt), d/dt sin(bt) = b cos(bt)
            out.push_back({q.is_cos ? -q.c * q.b : q.c * q.b, q.s, q.a, q.b, !q.is_cos});
        }
    }
    return out;
}
}  // namespace

double ExpTrigBasis::derivative(double t, int order) const {
    if (order < 1) throw std::invalid_argument("derivative order must be >= 1");
    std::vector<QTerm> terms{{1.0, power_, rate_, freq_, cos_}};
    for (int k = 0; k < order; ++k) terms = qterm_derivative(terms);
    double v = 0.0;
    for (const auto& q : terms) v += qterm_eval(q, t);
    return v;
}

GaussianBasis::GaussianBasis(double center, double width) : center_(center), width_(width) {
    if (!(width > 0)) throw std::invalid_argument("gaussian width must be positive");
}

double GaussianBasis::eval(double t) const {
    const double w = (t - center_) / width_;
    return std::exp(-w * w);
}

double GaussianBasis::derivative(double t, int order) const {
    if (order < 1) throw std::invalid_argument("derivative order must be >= 1");
    // d^k/dw^k e^{-w^2} = P_k(w) e^{-w^2},  P_{k+1} = P_k' - 2 w P_k
    PolyCoeffs p{1.0};
    for (int k = 0; k < order; ++k) {
        PolyCoeffs next = poly_deriv(p);
        next.resize(std::max(next.size(), p.size() + 1), 0.0);
        for (std::size_t j = 0; j < p.size(); ++j) next[j + 1] -= 2.0 * p[j];
        p = std::move(next);
    }
    const double w = (t - center_) / width_;
    return poly_at(p, w) * std::exp(-w * w) / std::pow(width_, order);
}

CauchyBasis::CauchyBasis(double center, double width) : center_(center), width_(width) {
    if (!(width > 0)) throw std::invalid_argument("cauchy width must be positive");
}

double CauchyBasis::eval(double t) const {
    const double w = (t - center_) / width_;
    return 1.0 / (1.0 + w * w);
}

double CauchyBasis::derivative(double t, int order) const {
    if (order < 1) throw std::invalid_argument("derivative order must be >= 1");
    // d^k/dw^k (1+w^2)^{-1} = N_k(w) (1+w^2)^{-(k+1)},
    // N_{k+1} = N_k' (1+w^2) - 2(k+1) w N_k
    PolyCoeffs num{1.0};
    for (int k = 0; k < order; ++k) {
        PolyCoeffs d = poly_deriv(num);
        PolyCoeffs next(std::max(d.size() + 2, num.size() + 1), 0.0);
        for (std::size_t j = 0; j < d.size(); ++j) {
            next[j] += d[j];
            next[j + 2] += d[j];
        }
        for (std::size_t j = 0; j < num.size(); ++j) next[j + 1] -= 2.0 * (k + 1) * num[j];
        num = std::move(next);
    }
    const double w = (t - center_) / width_;
    return poly_at(num, w) / std::pow(1.0 + w * w, order + 1) / std::pow(width_, order);
}

SplineBasis::SplineBasis(std::vector<double> knots, std::vector<double> values)
    : spline_(std::move(knots), std::move(values)) {}

double SplineBasis::eval(double t) const { return spline_.eval(t); }

double SplineBasis::derivative(double t, int order) const {
    if (order < 1) throw std::invalid_argument("derivative order must be >= 1");
    return spline_.derivative(t, order);
}

ChirpBasis::ChirpBasis(double scale) : scale_(scale) {}

double ChirpBasis::phase(double t) const {
    const double lambda = t <= 0.5 ? 4.0 + 32.0 * t : 4.0 + 32.0 * (1.0 - t);
    return scale_ * lambda * t;
}

double ChirpBasis::phase_d1(double t) const {
    return t <= 0.5 ? scale_ * (4.0 + 64.0 * t) : scale_ * (36.0 - 64.0 * t);
}

double ChirpBasis::phase_d2(double t) const { return t <= 0.5 ? scale_ * 64.0 : -scale_ * 64.0; }

double ChirpBasis::eval(double t) const { return std::cos(phase(t)); }

double ChirpBasis::derivative(double t, int order) const {
    switch (order) {
        case 1: return -phase_d1(t) * std::sin(phase(t));
        case 2:
            return -phase_d2(t) * std::sin(phase(t)) -
                   phase_d1(t) * phase_d1(t) * std::cos(phase(t));
        default: throw CapabilityError("chirp basis supports derivatives up to order 2");
    }
}

FunctionSystem::FunctionSystem(std::vector<BasisPtr> basis, Domain domain)
    : basis_(std::move(basis)), domain_(domain) {
    if (basis_.empty()) throw std::invalid_argument("a function system needs n >= 1 functions");
    for (const auto& b : basis_)
        if (!b) throw std::invalid_argument("null basis descriptor");
    if (domain_.is_half_line()) {
        for (const auto& b : basis_)
            if (!b->decays_at_infinity())
                throw std::invalid_argument(
                    "half-line domains require every basis function to decay at infinity");
    }

    // Gram-matrix rank check on a 10n-point uniform grid.
    const int n = this->n();
    const int grid = 10 * n;
    const double lo = domain_.a;
    const double hi = domain_.is_half_line() ? domain_.a + 30.0 : domain_.b;
    Eigen::MatrixXd G(grid, n);
    for (int g = 0; g < grid; ++g) {
        const double t = lo + (hi - lo) * g / (grid - 1.0);
        for (int k = 0; k < n; ++k) G(g, k) = basis_[k]->eval(t);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(G);
    const auto& sv = svd.singularValues();
    if (sv(n - 1) < 1e-10 * sv(0)) {
        std::ostringstream msg;
        msg << "basis functions numerically dependent on the evaluation grid (sigma_min/sigma_max="
            << sv(n - 1) / sv(0) << ")";
        throw DegeneracyError(msg.str(), sv(n - 1) > 0 ? sv(0) / sv(n - 1)
                                                       : std::numeric_limits<double>::infinity());
    }
}

void FunctionSystem::require_in_domain(double t) const {
    if (!domain_.contains(t)) {
        std::ostringstream msg;
        msg << "point t=" << t << " lies outside the domain";
        throw DomainError(msg.str());
    }
}

Eigen::VectorXd FunctionSystem::moment_vector(double t) const {
    require_in_domain(t);
    Eigen::VectorXd u(n());
    for (int k = 0; k < n(); ++k) u(k) = basis_[k]->eval(t);
    return u;
}

Eigen::VectorXd FunctionSystem::derivative_vector(double t, int order) const {
    require_in_domain(t);
    Eigen::VectorXd u(n());
    for (int k = 0; k < n(); ++k) u(k) = basis_[k]->derivative(t, order);
    return u;
}

Poly::Poly(Eigen::VectorXd c, SystemPtr s) : coeffs(std::move(c)), system(std::move(s)) {
    if (!system) throw std::invalid_argument("poly needs a function system");
    if (coeffs.size() != system->n())
        throw std::invalid_argument("coefficient count must equal system size");
}

double Poly::eval(double t) const {
    system->require_in_domain(t);
    double v = 0.0;
    for (int k = 0; k < system->n(); ++k) v += coeffs(k) * system->eval(k, t);
    return v;
}

double Poly::derivative(double t, int order) const {
    system->require_in_domain(t);
    double v = 0.0;
    for (int k = 0; k < system->n(); ++k)
        v += coeffs(k) * system->basis()[k]->derivative(t, order);
    return v;
}

double truncate_halfline(const FunctionSystem& system, const TargetFn& f, double tail_tol,
                         double horizon) {
    if (!system.domain().is_half_line())
        throw std::invalid_argument("truncate_halfline requires a half-line domain");
    if (!(tail_tol > 0)) throw std::invalid_argument("tail_tol must be positive");

    const double a = system.domain().a;
    auto envelope = [&](double t) {
        double e = f ? std::abs(f(t)) : 0.0;
        for (const auto& b : system.basis()) e = std::max(e, std::abs(b->eval(t)));
        return e;
    };
    auto quiet_beyond = [&](double t) {
        // check t and a few look-ahead points so an oscillation node cannot
        // masquerade as decay
        const double step = (t - a) + 1.0;
        for (double factor : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0})
            if (envelope(t + factor * step) > tail_tol) return false;
        return true;
    };

    double prev = a;
    double t = a + 1.0;
    while (!quiet_beyond(t)) {
        prev = t;
        t = a + (t - a) * 1.1;
        if (t - a > horizon)
            throw NonDecayingSystemError(
                "no decay below tail_tol detected within the search horizon");
    }
    // bisect the crossing of the envelope with tail_tol
    double lo = prev, hi = t;
    for (int it = 0; it < 64 && hi - lo > 1e-9 * (hi - a); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (quiet_beyond(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace remez
