#pragma once

#include <vector>

namespace remez {

// Cubic interpolating spline with not-a-knot boundary conditions: the two
// extreme cubic pieces coincide on each side, so third-derivative continuity
// is enforced at the second and second-to-last interior knots.  Evaluation
// outside the knot range extrapolates with the end cubics.
class CubicSpline {
  public:
    CubicSpline(std::vector<double> knots, std::vector<double> values);

    double eval(double t) const;
    // order >= 4 is identically zero inside each piece
    double derivative(double t, int order) const;

    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& values() const { return values_; }

  private:
    int segment(double t) const;

    std::vector<double> knots_;
    std::vector<double> values_;
    // per-segment cubic coefficients about the left knot:
    // s(t) = a + b*dt + c*dt^2 + d*dt^3
    std::vector<double> a_, b_, c_, d_;
};

}  // namespace remez
