#include "rapt/pricer/pricing.hpp"

#include <cmath>

#include "rapt/errors.hpp"

namespace rapt::pricer {

PriceRecord price_call_record(const clocks::ClockModel& model, const clocks::MarketParams& market,
                              const clocks::VanillaContract& contract,
                              const EngineOptions& options) {
    clocks::validate(model);
    clocks::validate(market);
    clocks::validate(contract);
    if (contract.side != clocks::OptionSide::call) {
        throw ValidationError("price_call: contract side must be call");
    }

    const clocks::ClockDynamics dyn = clocks::dynamics(model);
    const clocks::NormalizedInputs in = clocks::normalized_inputs(model, market, contract);
    auto quad = shared_gauss_legendre(options.quad_count, options.quad_lo, options.quad_hi);

    const double t = contract.maturity;
    PricedSlice slice = [&] {
        if (options.truncation.policy == TruncationPolicy::candidate_search) {
            return build_slice_best(in.x, in.mu,
                                    truncation_candidates(model, t, t, options.truncation),
                                    options.degrees, quad, options.correction_degree,
                                    options.slice_threshold);
        }
        const Interval domain = quantile_truncation(model, t, t, options.truncation);
        return build_slice(in.x, in.mu, domain, options.degrees, quad,
                           options.correction_degree, options.slice_threshold);
    }();

    PriceRecord record;
    record.mu = in.mu;
    record.x = in.x;
    record.truncation = Interval{slice.a, slice.b};
    record.fit_error = slice.fit_error;
    record.degree = slice.degree;
    record.tail_warning = slice.tail_warning;
    record.price = market.s0 * std::exp(-(market.q + dyn.omega) * t) *
                   price_expectation(slice, dyn, t);
    return record;
}

double price_call(const clocks::ClockModel& model, const clocks::MarketParams& market,
                  const clocks::VanillaContract& contract, const EngineOptions& options) {
    return price_call_record(model, market, contract, options).price;
}

double price_put(const clocks::ClockModel& model, const clocks::MarketParams& market,
                 const clocks::VanillaContract& contract, const EngineOptions& options) {
    if (contract.side != clocks::OptionSide::put) {
        throw ValidationError("price_put: contract side must be put");
    }
    clocks::VanillaContract call = contract;
    call.side = clocks::OptionSide::call;
    const double c = price_call(model, market, call, options);
    return c + contract.strike * std::exp(-market.r * contract.maturity) -
           market.s0 * std::exp(-market.q * contract.maturity);
}

} // namespace rapt::pricer
