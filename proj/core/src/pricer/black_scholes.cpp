#include "rapt/pricer/black_scholes.hpp"

#include <algorithm>
#include <cmath>

#include "rapt/numerics/special.hpp"

namespace rapt::pricer {

double c_bs(double v, double x, double mu) {
    if (v <= 0.0) return std::max(1.0 - std::exp(-x), 0.0);
    const double root = std::sqrt(v);
    const double base = x / root;
    return std::exp(mu * v) * num::std_normal_cdf(base + (mu + 0.5) * root) -
           std::exp(-x) * num::std_normal_cdf(base + (mu - 0.5) * root);
}

double black_scholes_call(double s0, double strike, double maturity, double r, double q,
                          double sigma) {
    const double total_sd = sigma * std::sqrt(maturity);
    if (total_sd <= 0.0) {
        return std::max(s0 * std::exp(-q * maturity) - strike * std::exp(-r * maturity), 0.0);
    }
    const double d1 =
        (std::log(s0 / strike) + (r - q + 0.5 * sigma * sigma) * maturity) / total_sd;
    const double d2 = d1 - total_sd;
    return s0 * std::exp(-q * maturity) * num::std_normal_cdf(d1) -
           strike * std::exp(-r * maturity) * num::std_normal_cdf(d2);
}

} // namespace rapt::pricer
