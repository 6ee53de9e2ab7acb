#pragma once

namespace rapt::pricer {

/// Normalized Black-Scholes call in total variance v >= 0:
///   c_bs(v; x, mu) = e^{mu v} N(x/sqrt(v) + (mu + 1/2) sqrt(v))
///                  - e^{-x}   N(x/sqrt(v) + (mu - 1/2) sqrt(v)),
/// extended by continuity to v = 0 where it equals max(1 - e^{-x}, 0).
double c_bs(double v, double x, double mu);

/// Classical Black-Scholes call. sigma = 0 returns the discounted
/// forward intrinsic value.
double black_scholes_call(double s0, double strike, double maturity, double r, double q,
                          double sigma);

} // namespace rapt::pricer
