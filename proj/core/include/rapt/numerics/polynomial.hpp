#pragma once

#include <complex>
#include <span>
#include <vector>

namespace rapt::num {

/// Horner evaluation of sum_k coeffs[k] * x^k.
std::complex<double> polyval(std::span<const double> coeffs, std::complex<double> x);
double polyval(std::span<const double> coeffs, double x);

/// Derivative coefficients of a power-basis polynomial.
std::vector<double> polyder(std::span<const double> coeffs);

/// All complex roots of sum_k coeffs[k] * x^k via balanced
/// companion-matrix eigenvalues, polished by a few Newton steps.
/// Requires degree >= 1 with nonzero leading coefficient.
std::vector<std::complex<double>> poly_roots(std::span<const double> coeffs);

} // namespace rapt::num
