#pragma once

#include <complex>
#include <functional>
#include <string>
#include <variant>

namespace rapt::clocks {

/// Variance-gamma clock: Brownian motion with drift theta and
/// volatility sigma run on an independent gamma subordinator with
/// scale nu.
struct VgParams {
    double sigma = 0.0;
    double nu = 0.0;
    double theta = 0.0;
};

/// CGMY model viewed as time-changed Brownian motion; the implied
/// Brownian parameters are theta = (G - M)/2 and sigma = 1.
struct CgmyParams {
    double c = 0.0;
    double g = 0.0;
    double m = 0.0;
    double y = 0.0;
};

/// Zero-correlation Heston: the clock integrates a CIR activity rate;
/// implied Brownian parameters are theta = -1/2 and sigma = 1.
struct HestonParams {
    double kappa = 0.0;
    double delta = 0.0;
    double xi = 0.0;
    double v0 = 0.0;
};

using ClockModel = std::variant<VgParams, CgmyParams, HestonParams>;

struct MarketParams {
    double s0 = 1.0;
    double r = 0.0;
    double q = 0.0;
};

enum class OptionSide { call, put };

struct VanillaContract {
    double strike = 0.0;
    double maturity = 0.0;
    OptionSide side = OptionSide::call;
};

/// Throws ValidationError when the parameter set violates the model's
/// constraints (positivity, Feller condition, finite compensator, ...).
void validate(const ClockModel& model);
void validate(const MarketParams& market);
void validate(const VanillaContract& contract);

double clock_theta(const ClockModel& model);
double clock_sigma(const ClockModel& model);
std::string model_name(const ClockModel& model);

/// E[exp(-u Z_t)] for Re(u) >= (model-dependent lower bound). Real
/// positive arguments give values in (0, 1].
std::complex<double> laplace_transform(const ClockModel& model, std::complex<double> u, double t);
double laplace_transform(const ClockModel& model, double u, double t);

/// Mean-correcting compensator omega = psi(theta + sigma^2/2) with
/// psi(s) = (1/t) log E[exp(s Z_t)]. Exactly zero for Heston.
double omega(const ClockModel& model);

/// The market-dependent parameter and adjusted log-moneyness:
///   mu = theta/sigma^2 + 1/2,   x = log(S0 / (K e^{(q - r + omega) T})).
struct NormalizedInputs {
    double mu = 0.0;
    double x = 0.0;
};
NormalizedInputs normalized_inputs(const ClockModel& model, const MarketParams& market,
                                   const VanillaContract& contract);

/// (1/t) log E[exp(i z X_t)] obtained through the clock transform at
/// u = -(i z theta - z^2 sigma^2 / 2). Time-independent for the Levy
/// clocks; genuinely t-dependent for Heston.
std::complex<double> characteristic_exponent_x(const ClockModel& model, std::complex<double> z,
                                               double t);

/// The inputs the pricing pipeline needs from a clock, decoupled from
/// the model union so tests can inject synthetic clocks (e.g. a
/// deterministic one).
struct ClockDynamics {
    double theta = 0.0;
    double sigma = 1.0;
    double omega = 0.0;
    std::function<std::complex<double>(std::complex<double>, double)> laplace;
};

ClockDynamics dynamics(const ClockModel& model);

/// Deterministic clock Z_t = rate * t; Laplace transform e^{-u rate t}.
ClockDynamics dirac_clock(double theta, double sigma, double rate = 1.0);

} // namespace rapt::clocks
