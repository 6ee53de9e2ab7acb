#include "rapt/pricer/truncation.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <cmath>

#include "rapt/clocks/heston_simulation.hpp"
#include "rapt/clocks/quantiles.hpp"
#include "rapt/errors.hpp"
#include "rapt/numerics/special.hpp"

namespace rapt::pricer {

namespace {

// First two moments of Z_t from the cumulant h(u) = (1/t) log E[e^{-uZ_t}]
// by five-point central differences at u = 0.
std::pair<double, double> clock_moments(const clocks::ClockModel& model, double t) {
    const double step = 1e-3;
    auto h = [&](double u) {
        return std::log(clocks::laplace_transform(model, std::complex<double>(u, 0.0), t)).real();
    };
    const double hm2 = h(-2.0 * step), hm1 = h(-step), hp1 = h(step), hp2 = h(2.0 * step);
    const double d1 = (hm2 - 8.0 * hm1 + 8.0 * hp1 - hp2) / (12.0 * step);
    const double d2 = (-hm2 + 16.0 * hm1 - 30.0 * h(0.0) + 16.0 * hp1 - hp2) / (12.0 * step * step);
    return {-d1, d2}; // mean, variance
}

// Inverse-Gaussian law matched to the first two moments of the clock;
// used for CGMY, whose tempered-stable subordinator has the thin
// IG-type left tail (exactly so for Y = 1/2). Returns (mean, ig-shape).
std::pair<double, double> surrogate_ig(const clocks::ClockModel& model, double t) {
    auto [mean, var] = clock_moments(model, t);
    return {mean, mean * mean * mean / var};
}

std::size_t heston_steps(double t) {
    return static_cast<std::size_t>(std::clamp(std::ceil(200.0 * t), 128.0, 1024.0));
}

// The ten candidates pair lower quantiles {0.05%, 0.1%, 0.5%, 2%, 5%,
// 10%, 20%} with upper quantiles {99.9%, 99.99%}: how much left mass to
// trade away for an easier fit is decided per x by the score.
std::vector<Interval> quantile_ladder(const std::function<double(double)>& quantile) {
    static constexpr std::array<std::pair<double, double>, 10> levels{{
        {0.001, 0.999},
        {0.0005, 0.999},
        {0.005, 0.999},
        {0.02, 0.999},
        {0.05, 0.999},
        {0.10, 0.999},
        {0.20, 0.999},
        {0.02, 0.9999},
        {0.05, 0.9999},
        {0.10, 0.9999},
    }};
    std::vector<Interval> candidates;
    candidates.reserve(levels.size());
    for (const auto& [p_lo, p_hi] : levels) {
        Interval c{quantile(p_lo), quantile(p_hi)};
        if (c.lo > 0.0 && c.lo < c.hi) candidates.push_back(c);
    }
    return candidates;
}

} // namespace

Interval quantile_truncation(const clocks::ClockModel& model, double t_min, double t_max,
                             const TruncationOptions& options) {
    if (!(t_min > 0.0 && t_max >= t_min)) {
        throw ValidationError("quantile_truncation: need 0 < t_min <= t_max");
    }
    if (std::holds_alternative<clocks::CgmyParams>(model)) {
        auto quantile = [&](double t, double p) {
            auto [mean, shape] = surrogate_ig(model, t);
            return num::inverse_gaussian_quantile(p, mean, shape);
        };
        return Interval{quantile(t_min, 0.001), quantile(t_max, 0.999)};
    }
    clocks::QuantileOptions qopts;
    qopts.seed = options.seed;
    qopts.n_paths = options.n_paths;
    return Interval{clocks::clock_quantile(model, t_min, 0.001, qopts),
                    clocks::clock_quantile(model, t_max, 0.999, qopts)};
}

std::vector<Interval> truncation_candidates(const clocks::ClockModel& model, double t_min,
                                            double t_max, const TruncationOptions& options) {
    if (std::fabs(t_max - t_min) <= 1e-12 * std::max(1.0, t_max)) {
        return truncation_context(model, t_min, options).candidates;
    }
    // Distinct maturities: ladder on the union pair.
    const Interval base = quantile_truncation(model, t_min, t_max, options);
    const Interval top = quantile_truncation(model, t_max, t_max, options);
    std::vector<Interval> lower = truncation_context(model, t_min, options).candidates;
    for (auto& c : lower) c.hi = std::max(c.hi, top.hi);
    lower.front() = base;
    return lower;
}

TruncationContext truncation_context(const clocks::ClockModel& model, double t,
                                     const TruncationOptions& options) {
    TruncationContext ctx;
    if (const auto* vg = std::get_if<clocks::VgParams>(&model)) {
        const double shape = t / vg->nu;
        const double scale = vg->sigma * vg->sigma * vg->nu;
        ctx.candidates = quantile_ladder(
            [&](double p) { return num::gamma_quantile(p, shape, scale); });
        ctx.cdf = [shape, scale](double z) { return num::gamma_cdf(z, shape, scale); };
        return ctx;
    }
    if (const auto* heston = std::get_if<clocks::HestonParams>(&model)) {
        auto samples = std::make_shared<std::vector<double>>(clocks::simulate_heston_clock(
            *heston, t, options.n_paths, heston_steps(t), options.seed));
        std::sort(samples->begin(), samples->end());
        auto at = [samples](double p) {
            const double k = std::ceil(p * static_cast<double>(samples->size()));
            std::size_t idx = k < 1.0 ? 0 : static_cast<std::size_t>(k) - 1;
            return (*samples)[std::min(idx, samples->size() - 1)];
        };
        ctx.candidates = quantile_ladder(at);
        ctx.cdf = [samples](double z) {
            const auto it = std::upper_bound(samples->begin(), samples->end(), z);
            return static_cast<double>(it - samples->begin()) /
                   static_cast<double>(samples->size());
        };
        return ctx;
    }
    auto [mean, shape] = surrogate_ig(model, t);
    ctx.candidates = quantile_ladder(
        [&](double p) { return num::inverse_gaussian_quantile(p, mean, shape); });
    ctx.cdf = [mean, shape](double z) { return num::inverse_gaussian_cdf(z, mean, shape); };
    return ctx;
}

Interval select_truncation(const clocks::ClockModel& model, double t_min, double t_max,
                           const TruncationOptions& options) {
    if (options.policy == TruncationPolicy::quantile) {
        return quantile_truncation(model, t_min, t_max, options);
    }
    return truncation_candidates(model, t_min, t_max, options).front();
}

} // namespace rapt::pricer
