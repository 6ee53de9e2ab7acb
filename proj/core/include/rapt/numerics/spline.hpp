#pragma once

#include <vector>

namespace rapt::num {

/// Cubic spline through (x_i, y_i) with strictly increasing x. The
/// default not-a-knot end conditions keep O(h^4) accuracy in the outer
/// intervals; natural ends (zero curvature) are available where the
/// flat-tail behaviour is wanted.
class CubicSpline {
public:
    enum class Boundary { not_a_knot, natural };

    CubicSpline(std::vector<double> x, std::vector<double> y,
                Boundary boundary = Boundary::not_a_knot);

    /// Evaluate at a point inside [x_front, x_back]; a small tolerance
    /// beyond the ends is clamped, farther out throws.
    double operator()(double x) const;

    double lower() const noexcept { return x_.front(); }
    double upper() const noexcept { return x_.back(); }

private:
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> second_; // second derivatives at the knots
};

} // namespace rapt::num
