#pragma once

#include <functional>
#include <vector>

namespace rapt::num {

/// Truncated Chebyshev series on an interval [a, b]:
///   f(x) ~ c_0/2 + sum_{j>=1} c_j T_j(y),  y = (2x - (b+a)) / (b - a).
class ChebyshevSeries {
public:
    ChebyshevSeries(std::vector<double> coefficients, double a, double b);

    /// Clenshaw backward-recurrence evaluation. Arguments up to 1e-12
    /// beyond the endpoints are clamped; beyond that a DomainError is thrown.
    double operator()(double x) const;

    double lower() const noexcept { return a_; }
    double upper() const noexcept { return b_; }
    const std::vector<double>& coefficients() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    /// Expand into power-basis coefficients in the original variable x
    /// (index k holds the coefficient of x^k).
    std::vector<double> to_monomial() const;

private:
    std::vector<double> coeffs_;
    double a_;
    double b_;
};

/// Sample f at the N mapped Chebyshev nodes and return the degree-(N-1)
/// interpolating series. Requires N >= 2.
ChebyshevSeries chebyshev_fit(const std::function<double(double)>& f, double a, double b,
                              int sample_count);

/// Plain sum  sum_{j=0}^{m} c_j T_j(y)  with y in [-1, 1] (no halved c_0);
/// used by rational numerators/denominators.
double chebyshev_sum_plain(const std::vector<double>& coeffs, double y);

/// Power-basis coefficients (in the mapped variable y) of a plain sum
/// sum c_j T_j(y).
std::vector<double> chebyshev_plain_to_monomial_unit(const std::vector<double>& coeffs);

/// Substitute y = scale * x + shift into a power-basis polynomial in y,
/// returning power-basis coefficients in x.
std::vector<double> monomial_affine_substitution(const std::vector<double>& poly, double scale,
                                                 double shift);

} // namespace rapt::num
