#pragma once

#include <cstdint>
#include <span>

#include "rapt/clocks/models.hpp"

namespace rapt::clocks {

/// Options for simulation-backed quantiles (Heston).
struct QuantileOptions {
    std::uint64_t seed = 1;
    std::size_t n_paths = 100000;
    std::size_t n_steps = 0; // 0: derived from t
};

/// Quantile of the scaled clock sigma^2 Z_t, the truncation variable of
/// the pricing pipeline. VG inverts the closed-form gamma CDF by
/// bracketed bisection; Heston uses the empirical quantile of seeded
/// simulated samples. CGMY has neither a closed-form CDF nor a
/// simulator here and throws SimulationUnavailableError.
double clock_quantile(const ClockModel& model, double t, double p,
                      const QuantileOptions& options = {});

/// Nearest-rank empirical quantile, inf{x : F_n(x) >= p}.
double empirical_quantile(std::span<const double> samples, double p);

} // namespace rapt::clocks
