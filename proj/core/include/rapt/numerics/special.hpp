#pragma once

namespace rapt::num {

/// Standard normal cumulative distribution function. Total on finite
/// input; relative accuracy at the level of the underlying erfc.
double std_normal_cdf(double z);

/// Standard normal density.
double std_normal_pdf(double z);

/// Regularized lower incomplete gamma P(a, b) = Gamma(a)^{-1} \int_0^b t^{a-1} e^{-t} dt.
/// Requires a > 0, b >= 0; nondecreasing in b with limit 1.
double regularized_lower_incomplete_gamma(double a, double b);

/// Density of a Gamma(shape, scale) law at x >= 0.
double gamma_pdf(double x, double shape, double scale);

/// CDF of a Gamma(shape, scale) law.
double gamma_cdf(double x, double shape, double scale);

/// Quantile of a Gamma(shape, scale) law by bracketed bisection
/// (absolute tolerance 1e-10 on x).
double gamma_quantile(double p, double shape, double scale);

/// CDF of an inverse-Gaussian law with the (mean, shape) parameterisation,
/// evaluated in a form that stays finite for large shape/mean ratios.
double inverse_gaussian_cdf(double x, double mean, double shape);

/// Quantile of the inverse-Gaussian law by bracketed bisection.
double inverse_gaussian_quantile(double p, double mean, double shape);

} // namespace rapt::num
