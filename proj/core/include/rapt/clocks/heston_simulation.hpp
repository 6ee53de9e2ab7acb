#pragma once

#include <cstdint>
#include <vector>

#include "rapt/clocks/models.hpp"

namespace rapt::clocks {

/// Simulate Z_t = int_0^t V_s ds under the CIR activity rate by
/// full-truncation Euler with trapezoidal integration of the path.
/// Reproducible for a given seed; paths are seeded independently so the
/// result does not depend on evaluation order.
std::vector<double> simulate_heston_clock(const HestonParams& params, double t,
                                          std::size_t n_paths, std::size_t n_steps,
                                          std::uint64_t seed);

/// Draw exact samples of the CIR endpoint V_t from its scaled
/// noncentral chi-square transition law (test support for the Euler
/// endpoint distribution).
std::vector<double> sample_cir_endpoint(const HestonParams& params, double t,
                                        std::size_t n_samples, std::uint64_t seed);

/// Closed-form mean of Z_t: delta t + (V0 - delta)(1 - e^{-kappa t})/kappa.
double heston_clock_mean(const HestonParams& params, double t);

} // namespace rapt::clocks
