#include "rapt/numerics/special.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rapt/errors.hpp"

namespace rapt::num {

double std_normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double std_normal_pdf(double z) {
    static const double inv_sqrt_2pi = 0.3989422804014326779;
    return inv_sqrt_2pi * std::exp(-0.5 * z * z);
}

namespace {

// Series expansion of P(a, x), effective for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-17) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz continued fraction for Q(a, x), effective for x >= a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-17) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace

double regularized_lower_incomplete_gamma(double a, double b) {
    if (!(a > 0.0)) {
        throw DomainError("regularized_lower_incomplete_gamma: shape must be positive, got " +
                          std::to_string(a));
    }
    if (!(b >= 0.0)) {
        throw DomainError("regularized_lower_incomplete_gamma: argument must be nonnegative");
    }
    if (b == 0.0) return 0.0;
    if (b < a + 1.0) return gamma_p_series(a, b);
    return 1.0 - gamma_q_cf(a, b);
}

double gamma_pdf(double x, double shape, double scale) {
    if (x < 0.0) return 0.0;
    if (x == 0.0) return shape < 1.0 ? std::numeric_limits<double>::infinity()
                                     : (shape == 1.0 ? 1.0 / scale : 0.0);
    double logp = (shape - 1.0) * std::log(x) - x / scale - shape * std::log(scale) -
                  std::lgamma(shape);
    return std::exp(logp);
}

double gamma_cdf(double x, double shape, double scale) {
    if (x <= 0.0) return 0.0;
    return regularized_lower_incomplete_gamma(shape, x / scale);
}

namespace {

// log N(-z) for z >= 0 without underflow (asymptotic expansion beyond
// the erfc range).
double log_normal_cdf_neg(double z) {
    if (z < 30.0) return std::log(0.5 * std::erfc(z / std::sqrt(2.0)));
    const double z2 = z * z;
    return -0.5 * z2 - std::log(z * std::sqrt(2.0 * M_PI)) + std::log1p(-1.0 / z2 + 3.0 / (z2 * z2));
}

} // namespace

double inverse_gaussian_cdf(double x, double mean, double shape) {
    if (!(mean > 0.0 && shape > 0.0)) {
        throw DomainError("inverse_gaussian_cdf: mean and shape must be positive");
    }
    if (x <= 0.0) return 0.0;
    const double root = std::sqrt(shape / x);
    const double z1 = root * (x / mean - 1.0);
    const double z2 = root * (x / mean + 1.0);
    const double first = std_normal_cdf(z1);
    const double second = std::exp(2.0 * shape / mean + log_normal_cdf_neg(z2));
    return std::min(1.0, first + second);
}

double inverse_gaussian_quantile(double p, double mean, double shape) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("inverse_gaussian_quantile: probability must lie in (0,1)");
    }
    const double sd = std::sqrt(mean * mean * mean / shape);
    double lo = 0.0;
    double hi = mean + 20.0 * sd;
    while (inverse_gaussian_cdf(hi, mean, shape) < p) hi *= 2.0;
    while (hi - lo > 1e-10) {
        double mid = 0.5 * (lo + hi);
        if (inverse_gaussian_cdf(mid, mean, shape) >= p) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

double gamma_quantile(double p, double shape, double scale) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("gamma_quantile: probability must lie in (0,1)");
    }
    const double mean = shape * scale;
    const double sd = std::sqrt(shape) * scale;
    double lo = 0.0;
    double hi = mean + 20.0 * sd;
    while (gamma_cdf(hi, shape, scale) < p) hi *= 2.0;
    while (hi - lo > 1e-10) {
        double mid = 0.5 * (lo + hi);
        if (gamma_cdf(mid, shape, scale) >= p) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

} // namespace rapt::num
