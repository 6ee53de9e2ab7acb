#include "rapt/fourier/carr_madan.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rapt/errors.hpp"
#include "rapt/fourier/fft.hpp"

namespace rapt::fourier {

namespace {

using cd = std::complex<double>;

cd clock_char_fn_x(const clocks::ClockDynamics& dynamics, cd z, double t) {
    const cd u = -(cd(0.0, 1.0) * z * dynamics.theta -
                   0.5 * z * z * dynamics.sigma * dynamics.sigma);
    return dynamics.laplace(u, t);
}

} // namespace

std::complex<double> char_fn_log_spot(const clocks::ClockDynamics& dynamics,
                                      const clocks::MarketParams& market, cd z,
                                      double maturity) {
    cd x_part;
    try {
        x_part = clock_char_fn_x(dynamics, z, maturity);
    } catch (const DomainError& err) {
        throw StripError(std::string("char_fn_log_spot: argument outside the analyticity strip "
                                     "(dampening too large for these parameters): ") +
                         err.what());
    }
    const cd drift = cd(0.0, 1.0) * z *
                     (std::log(market.s0) + (market.r - market.q - dynamics.omega) * maturity);
    return std::exp(drift) * x_part;
}

std::complex<double> char_fn_log_spot(const clocks::ClockModel& model,
                                      const clocks::MarketParams& market, cd z,
                                      double maturity) {
    return char_fn_log_spot(clocks::dynamics(model), market, z, maturity);
}

FftGrid carr_madan_prices(const clocks::ClockDynamics& dynamics,
                          const clocks::MarketParams& market, double maturity,
                          const CarrMadanParams& params) {
    if (params.n == 0 || (params.n & (params.n - 1)) != 0) {
        throw ValidationError("carr_madan_prices: N must be a power of two");
    }
    if (params.oversample == 0 || (params.oversample & (params.oversample - 1)) != 0) {
        throw ValidationError("carr_madan_prices: oversample must be a power of two");
    }
    if (!(params.alpha > 0.0) || !(params.eta > 0.0)) {
        throw ValidationError("carr_madan_prices: alpha and eta must be positive");
    }
    const std::size_t n = params.n;
    const std::size_t n_out = n * params.oversample;
    const double eta = params.eta;
    const double alpha = params.alpha;
    const double lambda = 2.0 * M_PI / (static_cast<double>(n_out) * eta);
    const double b = M_PI / eta;
    const double discount = std::exp(-market.r * maturity);

    std::vector<cd> input(n_out, cd(0.0, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        const double v = eta * static_cast<double>(j);
        const cd arg(v, -(alpha + 1.0));
        const cd numerator = discount * char_fn_log_spot(dynamics, market, arg, maturity);
        const cd denominator(alpha * alpha + alpha - v * v, (2.0 * alpha + 1.0) * v);
        const double simpson = j == 0 ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
        const cd phase = std::exp(cd(0.0, b * v));
        input[j] = phase * (numerator / denominator) * (eta * simpson / 3.0);
    }
    fft_radix2(input, /*inverse=*/false);

    FftGrid grid;
    grid.alpha = alpha;
    grid.eta = eta;
    grid.n = n_out;
    grid.maturity = maturity;
    grid.log_strikes.resize(n_out);
    grid.prices.resize(n_out);
    for (std::size_t m = 0; m < n_out; ++m) {
        const double k = -b + lambda * static_cast<double>(m);
        grid.log_strikes[m] = k;
        grid.prices[m] = std::exp(-alpha * k) * input[m].real() / M_PI;
    }
    return grid;
}

FftGrid carr_madan_prices(const clocks::ClockModel& model, const clocks::MarketParams& market,
                          double maturity, const CarrMadanParams& params) {
    return carr_madan_prices(clocks::dynamics(model), market, maturity, params);
}

double carr_madan_price_at(const FftGrid& grid, double strike) {
    if (!(strike > 0.0)) throw ValidationError("carr_madan_price_at: strike must be positive");
    const double k = std::log(strike);
    const double k0 = grid.log_strikes.front();
    const double lambda = grid.log_strikes[1] - grid.log_strikes[0];
    const double pos = (k - k0) / lambda;
    if (pos < 0.0 || pos > static_cast<double>(grid.n - 1)) {
        throw OutOfRangeError("carr_madan_price_at: strike outside the log-strike grid span");
    }
    // 4-point Lagrange interpolation centred on the bracketing interval.
    std::ptrdiff_t i1 = static_cast<std::ptrdiff_t>(std::floor(pos));
    i1 = std::clamp<std::ptrdiff_t>(i1, 1, static_cast<std::ptrdiff_t>(grid.n) - 3);
    const double s = pos - static_cast<double>(i1);
    const double y0 = grid.prices[i1 - 1];
    const double y1 = grid.prices[i1];
    const double y2 = grid.prices[i1 + 1];
    const double y3 = grid.prices[i1 + 2];
    const double c0 = -s * (s - 1.0) * (s - 2.0) / 6.0;
    const double c1 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
    const double c2 = -(s + 1.0) * s * (s - 2.0) / 2.0;
    const double c3 = (s + 1.0) * s * (s - 1.0) / 6.0;
    return c0 * y0 + c1 * y1 + c2 * y2 + c3 * y3;
}

} // namespace rapt::fourier
