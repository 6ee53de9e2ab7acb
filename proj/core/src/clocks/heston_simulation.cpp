#include "rapt/clocks/heston_simulation.hpp"

#include <cmath>
#include <random>

#include "rapt/errors.hpp"

namespace rapt::clocks {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace

std::vector<double> simulate_heston_clock(const HestonParams& params, double t,
                                          std::size_t n_paths, std::size_t n_steps,
                                          std::uint64_t seed) {
    validate(ClockModel(params));
    if (!(t > 0.0)) throw ValidationError("simulate_heston_clock: t must be positive");
    if (n_steps < static_cast<std::size_t>(std::ceil(50.0 * t))) {
        throw ValidationError("simulate_heston_clock: n_steps must be >= 50 t");
    }
    const double dt = t / static_cast<double>(n_steps);
    const double sqrt_dt = std::sqrt(dt);

    std::vector<double> samples(n_paths);
    for (std::size_t path = 0; path < n_paths; ++path) {
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(path + 1)));
        std::normal_distribution<double> normal(0.0, 1.0);
        double v = params.v0;
        double integral = 0.0;
        for (std::size_t step = 0; step < n_steps; ++step) {
            const double v_plus = std::max(v, 0.0);
            const double v_next =
                v + params.kappa * (params.delta - v_plus) * dt +
                params.xi * std::sqrt(v_plus) * sqrt_dt * normal(rng);
            integral += 0.5 * dt * (v_plus + std::max(v_next, 0.0));
            v = v_next;
        }
        samples[path] = integral;
    }
    return samples;
}

std::vector<double> sample_cir_endpoint(const HestonParams& params, double t,
                                        std::size_t n_samples, std::uint64_t seed) {
    validate(ClockModel(params));
    if (!(t > 0.0)) throw ValidationError("sample_cir_endpoint: t must be positive");
    const double xi2 = params.xi * params.xi;
    const double scale = xi2 * (1.0 - std::exp(-params.kappa * t)) / (4.0 * params.kappa);
    const double dof = 4.0 * params.kappa * params.delta / xi2;
    const double noncentrality =
        4.0 * params.kappa * std::exp(-params.kappa * t) * params.v0 /
        (xi2 * (1.0 - std::exp(-params.kappa * t)));

    std::mt19937_64 rng(splitmix64(seed));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::poisson_distribution<long> poisson(0.5 * noncentrality);

    std::vector<double> samples(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        double chi2;
        if (dof > 1.0) {
            const double z = normal(rng) + std::sqrt(noncentrality);
            std::gamma_distribution<double> gamma(0.5 * (dof - 1.0), 2.0);
            chi2 = z * z + gamma(rng);
        } else {
            const long jumps = poisson(rng);
            std::gamma_distribution<double> gamma(0.5 * dof + jumps, 2.0);
            chi2 = gamma(rng);
        }
        samples[i] = scale * chi2;
    }
    return samples;
}

double heston_clock_mean(const HestonParams& params, double t) {
    return params.delta * t +
           (params.v0 - params.delta) * (1.0 - std::exp(-params.kappa * t)) / params.kappa;
}

} // namespace rapt::clocks
