#include "rapt/pricer/cache.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <optional>
#include <string>

#include "rapt/errors.hpp"
#include "rapt/util/parallel.hpp"

namespace rapt::pricer {

namespace {

void hash_bytes(std::uint64_t& h, const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
}

void hash_double(std::uint64_t& h, double v) { hash_bytes(h, &v, sizeof(v)); }

} // namespace

std::uint64_t parameter_fingerprint(const clocks::ClockModel& model,
                                    const clocks::MarketParams& market) {
    std::uint64_t h = 14695981039346656037ull;
    const std::string name = clocks::model_name(model);
    hash_bytes(h, name.data(), name.size());
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, clocks::VgParams>) {
                hash_double(h, p.sigma);
                hash_double(h, p.nu);
                hash_double(h, p.theta);
            } else if constexpr (std::is_same_v<T, clocks::CgmyParams>) {
                hash_double(h, p.c);
                hash_double(h, p.g);
                hash_double(h, p.m);
                hash_double(h, p.y);
            } else {
                hash_double(h, p.kappa);
                hash_double(h, p.delta);
                hash_double(h, p.xi);
                hash_double(h, p.v0);
            }
        },
        model);
    hash_double(h, market.s0);
    hash_double(h, market.r);
    hash_double(h, market.q);
    return h;
}

const MaturitySlices& PriceCache::group_for(double maturity) const {
    for (const auto& group : groups) {
        if (std::fabs(group.maturity - maturity) <= 1e-12 * std::max(1.0, maturity)) {
            return group;
        }
    }
    throw OutOfRangeError("price cache: maturity " + std::to_string(maturity) +
                          " was not prepared at build time");
}

PriceCache build_cache(const clocks::ClockModel& model, const clocks::MarketParams& market,
                       std::span<const clocks::VanillaContract> contracts,
                       const EngineOptions& options) {
    clocks::validate(model);
    clocks::validate(market);
    if (contracts.empty()) throw ValidationError("build_cache: empty contract list");
    for (const auto& c : contracts) clocks::validate(c);

    double k_min = contracts[0].strike, k_max = contracts[0].strike;
    std::vector<double> maturities;
    for (const auto& c : contracts) {
        k_min = std::min(k_min, c.strike);
        k_max = std::max(k_max, c.strike);
        maturities.push_back(c.maturity);
    }
    std::sort(maturities.begin(), maturities.end());
    maturities.erase(std::unique(maturities.begin(), maturities.end(),
                                 [](double a, double b) {
                                     return std::fabs(a - b) <= 1e-12 * std::max(1.0, b);
                                 }),
                     maturities.end());
    const double t_min = maturities.front();
    const double t_max = maturities.back();

    // x_TC is monotone in K and in T, so the four corner contracts bound
    // the whole set.
    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -x_lo;
    double mu = 0.0;
    for (double k : {k_min, k_max}) {
        for (double t : {t_min, t_max}) {
            const auto in = clocks::normalized_inputs(
                model, market, clocks::VanillaContract{k, t, clocks::OptionSide::call});
            x_lo = std::min(x_lo, in.x);
            x_hi = std::max(x_hi, in.x);
            mu = in.mu;
        }
    }

    const int n = std::max(options.cache_slices, 4);
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = x_lo + (x_hi - x_lo) * i / (n - 1.0);

    auto quad = shared_gauss_legendre(options.quad_count, options.quad_lo, options.quad_hi);

    // Truncation candidates are per maturity; the fits are searched per
    // (x, maturity).
    std::vector<TruncationContext> candidates(maturities.size());
    for (std::size_t it = 0; it < maturities.size(); ++it) {
        const double t = maturities[it];
        if (options.truncation.policy == TruncationPolicy::candidate_search) {
            candidates[it] = truncation_context(model, t, options.truncation);
        } else {
            candidates[it].candidates = {quantile_truncation(model, t, t, options.truncation)};
        }
    }

    const std::size_t cells = maturities.size() * static_cast<std::size_t>(n);
    std::vector<std::optional<PricedSlice>> built(cells);
    util::parallel_for(cells, [&](std::size_t idx) {
        const std::size_t it = idx / n;
        const std::size_t ix = idx % n;
        try {
            built[idx] = build_slice_best(xs[ix], mu, candidates[it], options.degrees, quad,
                                          options.correction_degree, options.slice_threshold);
        } catch (const SliceRejectedError&) {
            built[idx] = std::nullopt; // dropped; neighbours bridge the gap
        }
    });

    PriceCache cache;
    cache.model = model;
    cache.market = market;
    cache.mu = mu;
    cache.omega = clocks::omega(model);
    cache.fingerprint = parameter_fingerprint(model, market);
    cache.options = options;
    cache.groups.resize(maturities.size());
    for (std::size_t it = 0; it < maturities.size(); ++it) {
        MaturitySlices& group = cache.groups[it];
        group.maturity = maturities[it];
        for (int ix = 0; ix < n; ++ix) {
            auto& slice = built[it * n + ix];
            if (slice) group.slices.push_back(std::move(*slice));
        }
        if (group.slices.size() < 4) {
            throw CacheDegenerateError(
                "build_cache: only " + std::to_string(group.slices.size()) +
                " slices survived the acceptance threshold at maturity " +
                std::to_string(group.maturity));
        }
        std::sort(group.slices.begin(), group.slices.end(),
                  [](const PricedSlice& a, const PricedSlice& b) { return a.x < b.x; });
    }
    return cache;
}

std::vector<double> cache_expectations(const PriceCache& cache, double maturity) {
    const MaturitySlices& group = cache.group_for(maturity);
    const clocks::ClockModel& model = cache.model;
    const double sigma = clocks::clock_sigma(model);
    const double s2 = sigma * sigma;
    const auto& quad = *group.slices.front().quad;

    std::vector<double> node_values(quad.nodes.size());
    for (std::size_t k = 0; k < node_values.size(); ++k) {
        node_values[k] = clocks::laplace_transform(model, s2 * quad.nodes[k], maturity);
    }
    std::size_t max_corr = 0;
    for (const auto& s : group.slices) {
        max_corr = std::max(max_corr, s.pf.correction_mono.size());
    }
    std::vector<double> moment_values(max_corr);
    for (std::size_t i = 0; i < max_corr; ++i) {
        moment_values[i] =
            clocks::laplace_transform(model, s2 * static_cast<double>(i), maturity);
    }

    std::vector<double> expectations(group.slices.size());
    for (std::size_t i = 0; i < group.slices.size(); ++i) {
        expectations[i] = expectation_from_values(group.slices[i], node_values, moment_values);
    }
    return expectations;
}

namespace {

double cache_x_for(const PriceCache& cache, const MaturitySlices& group,
                   const clocks::VanillaContract& contract) {
    const double x = std::log(cache.market.s0 / contract.strike) -
                     (cache.market.q - cache.market.r + cache.omega) * contract.maturity;
    const double lo = group.slices.front().x;
    const double hi = group.slices.back().x;
    if (x < lo - 1e-9 || x > hi + 1e-9) {
        throw OutOfRangeError("price_with_cache: x = " + std::to_string(x) +
                              " outside cache range [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
    }
    return std::clamp(x, lo, hi);
}

num::CubicSpline expectation_spline(const PriceCache& cache, const MaturitySlices& group,
                                    double maturity) {
    std::vector<double> xs(group.slices.size());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = group.slices[i].x;
    return num::CubicSpline(std::move(xs), cache_expectations(cache, maturity));
}

} // namespace

double price_with_cache(const PriceCache& cache, const clocks::VanillaContract& contract) {
    clocks::validate(contract);
    const MaturitySlices& group = cache.group_for(contract.maturity);
    const double x = cache_x_for(cache, group, contract);
    const num::CubicSpline spline = expectation_spline(cache, group, contract.maturity);
    const double prefactor =
        cache.market.s0 * std::exp(-(cache.market.q + cache.omega) * contract.maturity);
    const double call = prefactor * spline(x);
    if (contract.side == clocks::OptionSide::put) {
        return call + contract.strike * std::exp(-cache.market.r * contract.maturity) -
               cache.market.s0 * std::exp(-cache.market.q * contract.maturity);
    }
    return call;
}

std::vector<std::vector<double>> cache_price_grid(const PriceCache& cache,
                                                  std::span<const double> strikes,
                                                  std::span<const double> maturities) {
    std::vector<std::vector<double>> prices(strikes.size(),
                                            std::vector<double>(maturities.size(), 0.0));
    for (std::size_t it = 0; it < maturities.size(); ++it) {
        const double t = maturities[it];
        const MaturitySlices& group = cache.group_for(t);
        const num::CubicSpline spline = expectation_spline(cache, group, t);
        const double prefactor =
            cache.market.s0 * std::exp(-(cache.market.q + cache.omega) * t);
        for (std::size_t ik = 0; ik < strikes.size(); ++ik) {
            const clocks::VanillaContract contract{strikes[ik], t, clocks::OptionSide::call};
            const double x = cache_x_for(cache, group, contract);
            prices[ik][it] = prefactor * spline(x);
        }
    }
    return prices;
}

} // namespace rapt::pricer
