#include "rapt/iv/normalized.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rapt/errors.hpp"
#include "rapt/numerics/special.hpp"

namespace rapt::iv {

double c_iv(double v, double x) {
    if (v <= 0.0) return std::max(1.0 - std::exp(-x), 0.0);
    return num::std_normal_cdf(x / v + 0.5 * v) -
           std::exp(-x) * num::std_normal_cdf(x / v - 0.5 * v);
}

double c_iv_vega(double v, double x) { return num::std_normal_pdf(x / v + 0.5 * v); }

std::pair<double, double> li_bounds(double x) {
    if (x < -0.5 || x > 0.0) {
        throw DomainError("li_bounds: x must lie in [-0.5, 0], got " + std::to_string(x));
    }
    const double x2 = x * x;
    const double lb = (-0.00424532412773 * x + 0.00099075112125 * x2) /
                      (1.0 + 0.26674393279214 * x + 0.03360553011959 * x2);
    const double ub = (0.38292495908775 + 0.31382372544666 * x + 0.07116503261172 * x2) /
                      (1.0 + 0.01380361926221 * x + 0.11791124749938 * x2);
    return {lb, ub};
}

double iv_oracle(double c, double x, double tol) {
    const double floor_value = std::max(1.0 - std::exp(-x), 0.0);
    if (!(c > floor_value && c < 1.0)) {
        throw ArbitrageError("iv_oracle: price " + std::to_string(c) +
                             " outside the no-arbitrage interval (" +
                             std::to_string(floor_value) + ", 1)");
    }
    double lo = 1e-12;
    double hi = 1.0;
    while (c_iv(hi, x) < c) {
        hi *= 2.0;
        if (hi > 1e3) throw NumericalError("iv_oracle: bracket expansion failed");
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (c_iv(mid, x) >= c) {
            hi = mid;
        } else {
            lo = mid;
        }
        if (hi - lo < 1e-14 * std::max(1.0, hi)) break;
    }
    double v = 0.5 * (lo + hi);
    for (int iter = 0; iter < 8; ++iter) {
        const double err = c_iv(v, x) - c;
        if (std::fabs(err) <= tol) break;
        const double vega = c_iv_vega(v, x);
        if (vega <= 0.0) break;
        double step = err / vega;
        step = std::clamp(step, -0.5 * v, 0.5 * v);
        v -= step;
    }
    return v;
}

} // namespace rapt::iv
