#pragma once

#include "rapt/clocks/models.hpp"
#include "rapt/pricer/slice.hpp"
#include "rapt/pricer/truncation.hpp"

namespace rapt::pricer {

struct EngineOptions {
    DegreePolicy degrees;
    int correction_degree = 7;
    double slice_threshold = 1e-6;
    int quad_count = 500;
    double quad_lo = 0.0;
    double quad_hi = 7000.0;
    TruncationOptions truncation;
    int cache_slices = 45;
};

struct PriceRecord {
    double price = 0.0;
    double mu = 0.0;
    double x = 0.0;
    Interval truncation;
    double fit_error = 0.0;
    int degree = 0;
    bool tail_warning = false;
};

/// Discounted call price S0 e^{-(q+omega)T} E[c_bs(sigma^2 Z_T; x, mu)],
/// building a fresh slice for the contract.
PriceRecord price_call_record(const clocks::ClockModel& model, const clocks::MarketParams& market,
                              const clocks::VanillaContract& contract,
                              const EngineOptions& options = {});

double price_call(const clocks::ClockModel& model, const clocks::MarketParams& market,
                  const clocks::VanillaContract& contract, const EngineOptions& options = {});

/// Put via put-call parity: P = C + K e^{-rT} - S0 e^{-qT}.
double price_put(const clocks::ClockModel& model, const clocks::MarketParams& market,
                 const clocks::VanillaContract& contract, const EngineOptions& options = {});

} // namespace rapt::pricer
