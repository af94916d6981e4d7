#pragma once

#include <vector>

#include "remezgen/constraints.hpp"
#include "remezgen/function_system.hpp"

namespace remez {

struct GridLPResult {
    Eigen::VectorXd coeffs;
    double value = 0.0;  // exact grid-restricted minimax value d*
};

// Best uniform approximation restricted to a finite grid, as a linear
// program solved by a self-contained dense simplex method (Bland's rule).
// The dual has only n+1 rows, so the tableau stays small on long grids.
// d* lower-bounds the distance on the whole domain.
GridLPResult grid_chebyshev(const SystemPtr& system, const TargetFn& f,
                            const std::vector<double>& grid,
                            const ConstraintSet* constraints = nullptr);

std::vector<double> uniform_grid(double lo, double hi, int count);

}  // namespace remez
