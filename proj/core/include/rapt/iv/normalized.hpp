#pragma once

#include <utility>

namespace rapt::iv {

/// Normalized call in total standard deviation v > 0:
///   c_iv(v, x) = N(x/v + v/2) - e^{-x} N(x/v - v/2),
/// strictly increasing in v.
double c_iv(double v, double x);

/// d c_iv / d v = phi(x/v + v/2).
double c_iv_vega(double v, double x);

/// Li's lower/upper rational bounds on the normalized price region for
/// x in [-0.5, 0].
std::pair<double, double> li_bounds(double x);

/// Ground-truth inverse of c_iv(., x): bracketed bisection plus Newton
/// polish until |c_iv(v, x) - c| <= tol. Requires c strictly between
/// max(1 - e^{-x}, 0) and 1.
double iv_oracle(double c, double x, double tol = 1e-12);

} // namespace rapt::iv
