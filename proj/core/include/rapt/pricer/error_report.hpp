#pragma once

#include <functional>
#include <span>

#include "rapt/pricer/slice.hpp"

namespace rapt::pricer {

/// Signed integrals of (c_bs - approx) against the density of the
/// scaled clock over [0, a], [a, b] and [b, inf).
struct RegionErrors {
    double below = 0.0;
    double inside = 0.0;
    double above = 0.0;
};

/// Density route (closed-form models): adaptive composite quadrature of
/// the error integrand. `density` is the density of sigma^2 Z_T and
/// `upper` an integration cut-off beyond which its mass is negligible.
RegionErrors error_report(const PricedSlice& slice, const std::function<double(double)>& density,
                          double upper);

/// Sample route (simulated models): region-restricted sample means over
/// draws of sigma^2 Z_T.
RegionErrors error_report(const PricedSlice& slice, std::span<const double> samples);

} // namespace rapt::pricer
