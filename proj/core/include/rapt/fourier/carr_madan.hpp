#pragma once

#include <complex>
#include <vector>

#include "rapt/clocks/models.hpp"

namespace rapt::fourier {

/// Dampened-call transform output for one maturity: call prices on a
/// uniform log-strike grid with spacing lambda = 2 pi / (N eta), where
/// N counts the output nodes (frequency count times oversample).
struct FftGrid {
    double alpha = 0.0;
    double eta = 0.0;
    std::size_t n = 0;
    double maturity = 0.0;
    std::vector<double> log_strikes;
    std::vector<double> prices;
};

struct CarrMadanParams {
    double alpha = 1.5;
    double eta = 0.25;
    std::size_t n = 2048;
    // Zero-padding factor: evaluates the same dampened Simpson sum on an
    // `oversample` times finer log-strike grid, which brings the strike
    // interpolation error below the transform's own accuracy.
    std::size_t oversample = 8;
};

/// Characteristic function of log S_T under the risk-neutral dynamics:
///   E[e^{i z log S_T}] = e^{i z (log S0 + (r - q - omega) T)} E[e^{i z X_T}],
/// which pins E[S_T] = S0 e^{(r-q)T}. Throws StripError when z leaves
/// the model's analyticity strip.
std::complex<double> char_fn_log_spot(const clocks::ClockDynamics& dynamics,
                                      const clocks::MarketParams& market,
                                      std::complex<double> z, double maturity);
std::complex<double> char_fn_log_spot(const clocks::ClockModel& model,
                                      const clocks::MarketParams& market,
                                      std::complex<double> z, double maturity);

/// Carr-Madan dampened-call prices with Simpson weighting, one radix-2
/// transform per maturity.
FftGrid carr_madan_prices(const clocks::ClockDynamics& dynamics,
                          const clocks::MarketParams& market, double maturity,
                          const CarrMadanParams& params = {});
FftGrid carr_madan_prices(const clocks::ClockModel& model, const clocks::MarketParams& market,
                          double maturity, const CarrMadanParams& params = {});

/// Cubic (4-point Lagrange) interpolation on the log-strike grid; node
/// queries are exact. Throws OutOfRangeError outside the grid span.
double carr_madan_price_at(const FftGrid& grid, double strike);

} // namespace rapt::fourier
