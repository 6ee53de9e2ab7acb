#include "rapt/numerics/spline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rapt/errors.hpp"

namespace rapt::num {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y, Boundary boundary)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) {
        throw ValidationError("CubicSpline: need >= 2 knots and matching value count");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (!(x_[i] > x_[i - 1])) {
            throw ValidationError("CubicSpline: knots must be strictly increasing");
        }
    }
    second_.assign(n, 0.0);
    if (n < 4) boundary = Boundary::natural; // too few knots for not-a-knot
    if (n == 2) return;

    // Tridiagonal system for the knot second derivatives M_i:
    //   (h_{i-1}/6) M_{i-1} + ((h_{i-1}+h_i)/3) M_i + (h_i/6) M_{i+1} = d_i
    // with d_i the divided-difference jumps. Natural ends pin M = 0;
    // not-a-knot ties the end M values by third-derivative continuity at
    // the first and last interior knots.
    const std::size_t m = n - 2; // unknowns M_1 .. M_{n-2}
    std::vector<double> sub(m, 0.0), diag(m, 0.0), sup(m, 0.0), rhs(m, 0.0);
    auto h = [&](std::size_t i) { return x_[i + 1] - x_[i]; };
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hl = h(i - 1), hr = h(i);
        sub[i - 1] = hl / 6.0;
        diag[i - 1] = (hl + hr) / 3.0;
        sup[i - 1] = hr / 6.0;
        rhs[i - 1] = (y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl;
    }
    if (boundary == Boundary::not_a_knot) {
        // M_0 = M_1 - h_0 (M_2 - M_1)/h_1, mirrored at the right end.
        const double r0 = h(0) / h(1);
        diag[0] += sub[0] * (1.0 + r0);
        sup[0] -= sub[0] * r0;
        const double rn = h(n - 2) / h(n - 3);
        diag[m - 1] += sup[m - 1] * (1.0 + rn);
        sub[m - 1] -= sup[m - 1] * rn;
    }
    // Thomas algorithm.
    for (std::size_t i = 1; i < m; ++i) {
        const double w = sub[i] / diag[i - 1];
        diag[i] -= w * sup[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    second_[n - 2] = rhs[m - 1] / diag[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) {
        second_[i + 1] = (rhs[i] - sup[i] * second_[i + 2]) / diag[i];
    }
    if (boundary == Boundary::not_a_knot) {
        second_[0] = second_[1] - h(0) * (second_[2] - second_[1]) / h(1);
        second_[n - 1] =
            second_[n - 2] + h(n - 2) * (second_[n - 2] - second_[n - 3]) / h(n - 3);
    }
}

double CubicSpline::operator()(double x) const {
    const double span = x_.back() - x_.front();
    const double tol = 1e-9 * std::max(1.0, span);
    if (x < x_.front() - tol || x > x_.back() + tol) {
        throw OutOfRangeError("CubicSpline: query " + std::to_string(x) + " outside [" +
                              std::to_string(x_.front()) + ", " + std::to_string(x_.back()) + "]");
    }
    x = std::clamp(x, x_.front(), x_.back());
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t hi = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - x_.begin(), 1),
                                           x_.size() - 1);
    std::size_t lo = hi - 1;
    const double h = x_[hi] - x_[lo];
    const double a = (x_[hi] - x) / h;
    const double b = (x - x_[lo]) / h;
    return a * y_[lo] + b * y_[hi] +
           ((a * a * a - a) * second_[lo] + (b * b * b - b) * second_[hi]) * (h * h) / 6.0;
}

} // namespace rapt::num
