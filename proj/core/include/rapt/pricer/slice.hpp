#pragma once

#include <memory>
#include <span>
#include <vector>

#include "rapt/clocks/models.hpp"
#include "rapt/numerics/partial_fractions.hpp"
#include "rapt/numerics/quadrature.hpp"
#include "rapt/pricer/truncation.hpp"

namespace rapt::pricer {

struct DegreePolicy {
    int min_degree = 6;
    int max_degree = 8;
    int forced_degree = 0; // > 0 pins the degree
};

/// One prepared x-slice of the pricing pipeline: the partial-fraction
/// data of the rational fit of c_bs(.; x, mu) on [a, b] plus the
/// quadrature kernel weights w_k sum_j A_j e^{B_j y_k}.
struct PricedSlice {
    double x = 0.0;
    double mu = 0.0;
    double a = 0.0;
    double b = 0.0;
    int degree = 0;
    num::PartialFractionForm pf;
    std::shared_ptr<const num::QuadratureRule> quad;
    std::vector<double> kernel_weights;
    // Maximum grid error of the rational fit against c_bs; this is the
    // acceptance metric.
    double rational_error = 0.0;
    // Maximum grid error of approx() against c_bs, i.e. including the
    // quadrature replacing the exact pole integrals. Matches
    // rational_error up to ~1e-8 except when the truncated-tail decay
    // e^{-a d} is marginal (tail_warning).
    double fit_error = 0.0;
    double threshold = 0.0;
    bool tail_warning = false; // a * d < 25: truncated-tail decay marginal

    /// The function the expectation actually evaluates:
    ///   A_0 + sum_k kernel_weights[k] e^{-v y_k} + sum_i c_i e^{-i v}.
    double approx(double v) const;
};

/// Fit c_bs(.; x, mu) on [a, b] under the degree policy, decompose into
/// partial fractions (absorbing nonnegative-real-part poles into the
/// exponential correction) and precompute kernel weights. fit_error is
/// the end-to-end maximum error of approx() against c_bs on a 64-point
/// grid. Throws SliceRejectedError when no degree meets the threshold.
PricedSlice build_slice(double x, double mu, Interval domain, const DegreePolicy& policy,
                        std::shared_ptr<const num::QuadratureRule> quad,
                        int correction_degree = 7, double threshold = 1e-6);

/// Best slice across truncation candidates (smallest fit_error wins;
/// earlier candidate wins ties).
PricedSlice build_slice_best(double x, double mu, const std::vector<Interval>& candidates,
                             const DegreePolicy& policy,
                             std::shared_ptr<const num::QuadratureRule> quad,
                             int correction_degree = 7, double threshold = 1e-6);

/// Same, but candidates are ranked by a full-support error score: the
/// on-domain error plus the off-domain approximation error weighted by
/// the clock mass the candidate leaves outside [a, b].
PricedSlice build_slice_best(double x, double mu, const TruncationContext& context,
                             const DegreePolicy& policy,
                             std::shared_ptr<const num::QuadratureRule> quad,
                             int correction_degree = 7, double threshold = 1e-6);

/// E[c_bs(sigma^2 Z_T; x, mu)] through the clock's Laplace transform.
double price_expectation(const PricedSlice& slice,
                         const clocks::ClockDynamics& dynamics, double maturity);

/// Same from precomputed transform values L(sigma^2 y_k, T) at the
/// quadrature nodes and L(sigma^2 i, T) for the correction moments.
double expectation_from_values(const PricedSlice& slice, std::span<const double> node_values,
                               std::span<const double> moment_values);

/// Recompute kernel weights (and the correction's power basis) from the
/// partial-fraction data; shared by the build path and deserialization
/// so both produce bit-identical slices.
void rebuild_slice_derived(PricedSlice& slice);

/// Shared Gauss-Legendre rules keyed by (count, lo, hi).
std::shared_ptr<const num::QuadratureRule> shared_gauss_legendre(int count, double lo, double hi);

} // namespace rapt::pricer
