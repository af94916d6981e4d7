#pragma once

#include <vector>

#include "remezgen/solver.hpp"

namespace remez {

// Spectrum of a stable matrix: eigenvalues with largest Jordan block sizes.
// Conjugate pairs are listed once (im >= 0) and expanded to cos/sin basis.
struct SpectrumSpec {
    struct Eigenvalue {
        double re = -1.0;
        double im = 0.0;
        int jordan = 1;
    };
    std::vector<Eigenvalue> eigenvalues;
};

// {t^s e^{re t} cos(im t), t^s e^{re t} sin(im t) : s < jordan} on [0, inf)
SystemPtr spectrum_system(const SpectrumSpec& spec);

struct MarkovBernsteinResult {
    double constant = 0.0;  // C_j; +inf when the constraint is infeasible
    Poly extremal;          // minimal-norm polynomial with p^{(j)} pinned to 1
    ApproxResult approx;
};

// Sharp constant in ||p^(j)|| <= C_j ||p|| over span{t^m : m in powers} on
// [-1,1]: the reciprocal of min ||p|| subject to p^(j)(-1) = 1.
MarkovBernsteinResult markov_bernstein_lacunary(const std::vector<int>& powers, int j,
                                                const SolverOptions& opts = {});

// Same constant over the spectrum system on the half-line, constraint at 0.
MarkovBernsteinResult markov_bernstein_exponential(const SpectrumSpec& spectrum, int j,
                                                   const SolverOptions& opts = {});

struct OdeBoundResult {
    double bound = 0.0;  // max |x'(0)| over solutions with ||x|| <= 1 on [0, inf)
    SpectrumSpec spectrum;
    MarkovBernsteinResult mb;
};

// x^(n) = sum_k c_k x^(k); coefficients c_0..c_{n-1} must be Hurwitz-stable
OdeBoundResult ode_derivative_bound(const std::vector<double>& char_coeffs,
                                    const SolverOptions& opts = {});

struct DwellTimeResult {
    double M = 0.0;  // m + T
    double T = 0.0;
    std::vector<double> final_values;  // v_A(T) per spectrum at the returned T
};

// Minimal stability interval of a switching system: the smallest T (found by
// bisection to tolerance tol) with v_A(T) > 1 for every spectrum, where
// v_A(T) = min{ ||p||_{C[0,inf)} : p(T) = 1 } over the spectrum system.
DwellTimeResult min_stability_interval(const std::vector<SpectrumSpec>& spectra, double m,
                                       double tol = 1e-4, const SolverOptions& opts = {});

}  // namespace remez
