#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rapt/numerics/spline.hpp"
#include "rapt/pricer/pricing.hpp"
#include "rapt/pricer/slice.hpp"

namespace rapt::pricer {

/// Content hash of the model and market parameters at full precision;
/// guards against pricing from a stale cache.
std::uint64_t parameter_fingerprint(const clocks::ClockModel& model,
                                    const clocks::MarketParams& market);

/// The prepared slices for one maturity: the truncation candidates are
/// searched per (x, T) because the support of sigma^2 Z_T moves too
/// much across maturities for one fit to serve them all. Slices that
/// missed the acceptance threshold are absent; the x spline bridges
/// the gaps.
struct MaturitySlices {
    double maturity = 0.0;
    std::vector<PricedSlice> slices; // sorted by x, survivors only
};

/// Prepared x-grid slices for one (model, market) pair and a fixed
/// maturity list. Immutable after build; prices come from a cubic
/// spline over the per-slice expectations at the query maturity.
struct PriceCache {
    clocks::ClockModel model;
    clocks::MarketParams market;
    double mu = 0.0;
    double omega = 0.0;
    std::uint64_t fingerprint = 0;
    std::vector<MaturitySlices> groups; // sorted by maturity
    EngineOptions options;

    const MaturitySlices& group_for(double maturity) const;
};

/// Span the x range of the contract set's four corner contracts with
/// `options.cache_slices` slices per distinct maturity, dropping slices
/// that miss the acceptance threshold. Throws CacheDegenerateError when
/// fewer than 4 survive for some maturity.
PriceCache build_cache(const clocks::ClockModel& model, const clocks::MarketParams& market,
                       std::span<const clocks::VanillaContract> contracts,
                       const EngineOptions& options = {});

/// Per-slice expectations E[c_bs(sigma^2 Z_T; x_i, mu)] at one of the
/// prepared maturities.
std::vector<double> cache_expectations(const PriceCache& cache, double maturity);

/// Price one contract through the cache (calls via the spline, puts via
/// parity). Throws OutOfRangeError when x_TC falls outside the grid or
/// the maturity was not prepared.
double price_with_cache(const PriceCache& cache, const clocks::VanillaContract& contract);

/// Grid pricing with per-maturity batching: result[ik][it] is the call
/// price at (strikes[ik], maturities[it]).
std::vector<std::vector<double>> cache_price_grid(const PriceCache& cache,
                                                  std::span<const double> strikes,
                                                  std::span<const double> maturities);

} // namespace rapt::pricer
