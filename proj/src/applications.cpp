#include "remezgen/applications.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "remezgen/errors.hpp"

namespace remez {

SystemPtr spectrum_system(const SpectrumSpec& spec) {
    if (spec.eigenvalues.empty()) throw std::invalid_argument("spectrum must not be empty");
    std::vector<BasisPtr> basis;
    for (const auto& ev : spec.eigenvalues) {
        if (!(ev.re < 0.0))
            throw DomainError("spectrum contains an eigenvalue with nonnegative real part");
        if (ev.jordan < 1) throw std::invalid_argument("Jordan block size must be positive");
        for (int s = 0; s < ev.jordan; ++s) {
            if (ev.im == 0.0) {
                basis.push_back(std::make_shared<ExpTrigBasis>(ev.re, s, 0.0, true));
            } else {
                basis.push_back(std::make_shared<ExpTrigBasis>(ev.re, s, std::abs(ev.im), true));
                basis.push_back(std::make_shared<ExpTrigBasis>(ev.re, s, std::abs(ev.im), false));
            }
        }
    }
    return std::make_shared<FunctionSystem>(basis, Domain::half_line(0.0));
}

namespace {

// C_j = 1 / min{ ||p|| : ell(p) = 1 } for the given constraint functional
MarkovBernsteinResult minimal_norm_reciprocal(const SystemPtr& system, LinearFunctional ell,
                                              const SolverOptions& opts) {
    MarkovBernsteinResult out;
    if (ell.realized.norm() < 1e-12) {
        // the constrained functional vanishes identically on the system
        out.constant = std::numeric_limits<double>::infinity();
        return out;
    }
    auto zero = [](double) { return 0.0; };
    if (system->n() == 1) {
        // the constraint pins down the single coefficient; no optimization left
        Eigen::VectorXd c(1);
        c(0) = 1.0 / ell.realized(0);
        out.extremal = Poly(c, system);
        const double hi = system->domain().is_half_line()
                              ? truncate_halfline(*system, zero, opts.tail_tol)
                              : system->domain().b;
        MaxAbsError me = global_max_abs_error(out.extremal, zero, system->domain().a, hi, opts.grid);
        out.approx.poly = out.extremal;
        out.approx.lower = out.approx.upper = me.value;
        out.approx.converged = true;
        out.constant = 1.0 / me.value;
        return out;
    }
    ConstraintSet cs(system, {std::move(ell)}, {1.0});
    out.approx = solve_constrained(system, zero, cs, opts);
    out.extremal = out.approx.poly;
    out.constant = 1.0 / out.approx.upper;
    return out;
}

}  // namespace

MarkovBernsteinResult markov_bernstein_lacunary(const std::vector<int>& powers, int j,
                                                const SolverOptions& opts) {
    if (j < 1) throw std::invalid_argument("derivative order must be >= 1");
    std::vector<int> sorted = powers;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.front() < 0)
        throw std::invalid_argument("powers must be distinct nonnegative integers");
    std::vector<BasisPtr> basis;
    for (int m : sorted) basis.push_back(std::make_shared<PowerBasis>(m));
    auto system = std::make_shared<FunctionSystem>(basis, Domain::interval(-1.0, 1.0));
    return minimal_norm_reciprocal(system, derivative_functional(*system, -1.0, j), opts);
}

MarkovBernsteinResult markov_bernstein_exponential(const SpectrumSpec& spectrum, int j,
                                                   const SolverOptions& opts) {
    if (j < 1) throw std::invalid_argument("derivative order must be >= 1");
    auto system = spectrum_system(spectrum);
    return minimal_norm_reciprocal(system, derivative_functional(*system, 0.0, j), opts);
}

OdeBoundResult ode_derivative_bound(const std::vector<double>& char_coeffs,
                                    const SolverOptions& opts) {
    const int n = static_cast<int>(char_coeffs.size());
    if (n < 1) throw std::invalid_argument("need at least one characteristic coefficient");

    // roots of z^n - sum c_k z^k via the companion matrix
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) companion(0, k) = char_coeffs[n - 1 - k];
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    Eigen::VectorXcd roots = companion.eigenvalues();

    OdeBoundResult out;
    std::vector<std::complex<double>> remaining;
    for (int i = 0; i < n; ++i) {
        if (!(roots(i).real() < -1e-12))
            throw DomainError("characteristic polynomial is not Hurwitz-stable");
        remaining.push_back(roots(i));
    }
    // cluster coincident roots and fold conjugate pairs
    while (!remaining.empty()) {
        const std::complex<double> z = remaining.front();
        if (z.imag() < -1e-8) {  // keep the im >= 0 representative
            remaining.erase(remaining.begin());
            continue;
        }
        int mult = 0;
        for (auto it = remaining.begin(); it != remaining.end();) {
            if (std::abs(*it - z) < 1e-6 || std::abs(std::conj(*it) - z) < 1e-6) {
                ++mult;
                it = remaining.erase(it);
            } else {
                ++it;
            }
        }
        SpectrumSpec::Eigenvalue ev;
        ev.re = z.real();
        ev.im = std::abs(z.imag()) < 1e-8 ? 0.0 : std::abs(z.imag());
        ev.jordan = ev.im == 0.0 ? mult : (mult + 1) / 2;
        out.spectrum.eigenvalues.push_back(ev);
    }

    out.mb = markov_bernstein_exponential(out.spectrum, 1, opts);
    out.bound = out.mb.constant;
    return out;
}

DwellTimeResult min_stability_interval(const std::vector<SpectrumSpec>& spectra, double m,
                                       double tol, const SolverOptions& opts) {
    if (spectra.empty()) throw std::invalid_argument("spectra list must not be empty");
    if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");

    std::vector<SystemPtr> systems;
    double slowest = 0.0;
    for (const auto& spec : spectra) {
        systems.push_back(spectrum_system(spec));
        for (const auto& ev : spec.eigenvalues) slowest = std::max(slowest, 1.0 / -ev.re);
    }

    auto value_at = [&](const SystemPtr& sys, double T) {
        return minimal_norm_reciprocal(sys, point_eval_functional(*sys, T), opts).approx.upper;
    };
    auto all_above_one = [&](double T) {
        for (const auto& sys : systems)
            if (!(value_at(sys, T) > 1.0)) return false;
        return true;
    };

    double lo = 0.0;
    double hi = 10.0 * slowest;
    if (!all_above_one(hi))
        throw std::runtime_error("dwell-time bisection horizon exceeded: v_A(T) <= 1 throughout");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (all_above_one(mid))
            hi = mid;
        else
            lo = mid;
    }

    DwellTimeResult out;
    out.T = hi;
    out.M = m + hi;
    for (const auto& sys : systems) out.final_values.push_back(value_at(sys, hi));
    return out;
}

}  // namespace remez
