#pragma once

#include <functional>
#include <vector>

namespace rapt::num {

/// Rational function of equal numerator/denominator degree m on [a, b],
/// held both as ratios of Chebyshev sums (b_0 normalized to 1) and as
/// power-basis polynomials in the original variable.
struct RationalApproximant {
    int degree = 0;
    std::vector<double> num_cheb; // m+1 plain Chebyshev coefficients
    std::vector<double> den_cheb; // m+1 plain Chebyshev coefficients, den_cheb[0] == 1
    std::vector<double> num_mono; // power basis in the original variable
    std::vector<double> den_mono;
    double a = 0.0;
    double b = 0.0;

    /// Chebyshev-basis evaluation (primary path).
    double operator()(double x) const;

    /// Power-basis evaluation; agrees with operator() up to conditioning.
    double eval_monomial(double x) const;

    /// True when the denominator has no sign change on a fine grid.
    bool denominator_positive_on_grid(int points = 1024) const;

    /// min |den| / max |den| over a fine grid; a small value flags a
    /// spurious pole-zero pair parked inside the domain.
    double denominator_margin(int points = 2048) const;
};

/// Rational Chebyshev approximation of degree m: solves the
/// (2m+1)x(2m+1) coefficient-matching linear system built from the
/// Chebyshev coefficients of f. Throws SingularSystemError when the
/// system is numerically rank-deficient (degree too high for f on this
/// domain) and NumericalError when the solve residual exceeds 1e-10.
RationalApproximant rational_chebyshev_fit(const std::function<double(double)>& f, double a,
                                           double b, int degree);

/// Same, but reusing precomputed Chebyshev coefficients of f (needs at
/// least 3m+1 of them).
RationalApproximant rational_fit_from_coeffs(const std::vector<double>& cheb_coeffs, double a,
                                             double b, int degree);

/// Discrete least-squares rational fit on an oversampled Chebyshev grid
/// with a small ridge penalty; useful when the coefficient-matching
/// system is rank-deficient because f is well approximated by a lower
/// degree (the ridge suppresses spurious pole-zero pairs).
RationalApproximant rational_ls_fit(const std::function<double(double)>& f, double a, double b,
                                    int degree, double ridge = 1e-8);

/// Iteratively reweighted refit toward the equal-ripple (minimax)
/// solution; returns the best iterate measured by maximum absolute
/// error on a 512-point grid, never worse than the input.
RationalApproximant minimax_refine(const RationalApproximant& approx,
                                   const std::function<double(double)>& f, int max_iters = 6);

/// Recompute the power-basis forms from the Chebyshev coefficients
/// (used after construction and after deserialization).
void fill_monomial_forms(RationalApproximant& approx);

} // namespace rapt::num
