#pragma once

#include <functional>

#include "remezgen/function_system.hpp"

namespace remez {

// Uniform scan grid plus local golden-section refinement.
struct SearchGrid {
    int total_points = 4096;   // scan resolution (at least 2(n+1) enforced by callers)
    int refine_iters = 60;     // golden-section iterations per local bracket
    double bracket_tol = 1e-12;  // relative bracket width target
};

struct MaxAbsError {
    double t0 = 0.0;
    double value = 0.0;  // r = |p(t0) - f(t0)|
    int sign = 1;        // sign(p(t0) - f(t0))
};

// Global maximizer of |p - f| on [lo, hi]: grid scan, then golden-section
// refinement around the best cell and its neighbours.  Ties go to smaller t.
MaxAbsError global_max_abs_error(const Poly& p, const TargetFn& f, double lo, double hi,
                                 const SearchGrid& grid);

// Cheap acceptance variant: the first grid point whose error exceeds
// accept_level short-circuits the scan; falls back to the full search.
MaxAbsError global_max_abs_error_cheap(const Poly& p, const TargetFn& f, double lo, double hi,
                                       const SearchGrid& grid, double accept_level);

struct SuperlevelMin {
    double t = 0.0;
    double g_value = 0.0;
    bool fallback = false;  // feasible grid empty; returned t0 instead
};

// Minimizer of g over { t : |p(t)-f(t)| >= threshold }; every candidate is
// checked against the constraint, so the result satisfies it up to 1e-9.
SuperlevelMin superlevel_min_g(const Poly& p, const TargetFn& f, double lo, double hi,
                               double threshold, const std::function<double(double)>& g,
                               const SearchGrid& grid, double t_fallback);

}  // namespace remez
