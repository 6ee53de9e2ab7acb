#include "rapt/clocks/quantiles.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rapt/clocks/heston_simulation.hpp"
#include "rapt/errors.hpp"
#include "rapt/numerics/special.hpp"

namespace rapt::clocks {

double empirical_quantile(std::span<const double> samples, double p) {
    if (samples.empty()) throw ValidationError("empirical_quantile: empty sample");
    if (!(p > 0.0 && p < 1.0)) throw ValidationError("empirical_quantile: p must be in (0,1)");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double k = std::ceil(p * static_cast<double>(sorted.size()));
    std::size_t idx = k < 1.0 ? 0 : static_cast<std::size_t>(k) - 1;
    idx = std::min(idx, sorted.size() - 1);
    return sorted[idx];
}

double clock_quantile(const ClockModel& model, double t, double p,
                      const QuantileOptions& options) {
    validate(model);
    if (!(t > 0.0)) throw ValidationError("clock_quantile: t must be positive");
    if (!(p > 0.0 && p < 1.0)) throw ValidationError("clock_quantile: p must be in (0,1)");

    if (const auto* vg = std::get_if<VgParams>(&model)) {
        // sigma^2 Z_t ~ Gamma(t/nu, sigma^2 nu) by the gamma scaling property.
        return num::gamma_quantile(p, t / vg->nu, vg->sigma * vg->sigma * vg->nu);
    }
    if (const auto* heston = std::get_if<HestonParams>(&model)) {
        std::size_t steps = options.n_steps;
        if (steps == 0) {
            steps = static_cast<std::size_t>(std::clamp(std::ceil(200.0 * t), 128.0, 1024.0));
        }
        const std::vector<double> samples =
            simulate_heston_clock(*heston, t, options.n_paths, steps, options.seed);
        return empirical_quantile(samples, p); // sigma = 1 for this clock
    }
    throw SimulationUnavailableError(
        "clock_quantile: CGMY has neither a closed-form CDF nor a simulator");
}

} // namespace rapt::clocks
