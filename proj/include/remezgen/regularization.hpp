#pragma once

#include <vector>

#include "remezgen/constraints.hpp"
#include "remezgen/simplex_engine.hpp"

namespace remez {

// Unit-coefficient-norm polynomial vanishing at every node except
// tau_{i1}, tau_{i2} (and annihilated by all constraints when present).
// |q(t)| equals the Euclidean distance from u(t) to the spanned hyperplane.
struct VanishingPoly {
    int i1 = 0;
    int i2 = 0;
    Poly poly;

    double eval(double t) const { return poly.eval(t); }
};

VanishingPoly vanishing_polynomial(const NodeSet& nodes, int i1, int i2, const SystemPtr& system,
                                   const ConstraintSet* constraints = nullptr);

// all C(m,2) vanishing polynomials of the node set
std::vector<VanishingPoly> all_vanishing_polynomials(const NodeSet& nodes, const SystemPtr& system,
                                                     const ConstraintSet* constraints = nullptr);

// g(t) = sum over pairs of 1/|q(t)|^2; +inf when any q vanishes at t
double g_objective(double t, const std::vector<VanishingPoly>& qs);

}  // namespace remez
