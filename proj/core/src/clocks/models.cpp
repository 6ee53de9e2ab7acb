#include "rapt/clocks/models.hpp"

#include <cmath>

#include "rapt/errors.hpp"

namespace rapt::clocks {

namespace {

using cd = std::complex<double>;

void require(bool ok, const std::string& message) {
    if (!ok) throw ValidationError(message);
}

cd vg_laplace(const VgParams& p, cd u, double t) {
    const cd arg = 1.0 + p.nu * u;
    if (arg.real() <= 0.0) {
        throw DomainError("laplace_transform: VG branch condition Re(1 + nu u) > 0 violated");
    }
    return std::exp(-(t / p.nu) * std::log(arg));
}

// Analytic continuation of the clock transform consistent with the CGMY
// characteristic function: with theta = (G-M)/2 the substitution
// u = z^2/2 - i z theta maps the pair {(G+M)/2 +- i sqrt(2u - theta^2)}
// onto {G + iz, M - iz}.
cd cgmy_laplace(const CgmyParams& p, cd u, double t) {
    const double theta = 0.5 * (p.g - p.m);
    const double half_sum = 0.5 * (p.g + p.m);
    const cd s = std::sqrt(2.0 * u - theta * theta);
    const cd p_plus = half_sum + cd(0.0, 1.0) * s;
    const cd p_minus = half_sum - cd(0.0, 1.0) * s;
    if (p_plus.real() <= 0.0 || p_minus.real() <= 0.0) {
        throw DomainError("laplace_transform: CGMY argument leaves the principal branch domain");
    }
    const double gamma_my = std::tgamma(-p.y);
    const cd h = p.c * gamma_my *
                 (std::pow(p_plus, p.y) + std::pow(p_minus, p.y) -
                  std::pow(p.m, p.y) - std::pow(p.g, p.y));
    return std::exp(t * h);
}

// CIR time-integral transform in the overflow-free form: the e^{eta t}
// factors are pulled out so only decaying exponentials remain.
cd heston_laplace(const HestonParams& p, cd u, double t) {
    const double xi2 = p.xi * p.xi;
    const cd eta = std::sqrt(2.0 * xi2 * u + p.kappa * p.kappa);
    const cd em = std::exp(-eta * t);
    const cd denom = (eta + p.kappa) * (1.0 - em) + 2.0 * eta * em;
    if (std::abs(denom) == 0.0) {
        throw DomainError("laplace_transform: Heston transform singular at this argument");
    }
    const cd log_a = (2.0 * p.kappa * p.delta / xi2) *
                     (std::log(2.0 * eta) + 0.5 * (p.kappa - eta) * t - std::log(denom));
    const cd b = 2.0 * u * (1.0 - em) / denom;
    const cd result = std::exp(log_a - b * p.v0);
    if (!std::isfinite(result.real()) || !std::isfinite(result.imag())) {
        throw DomainError("laplace_transform: Heston transform overflowed at this argument");
    }
    return result;
}

} // namespace

void validate(const ClockModel& model) {
    std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, VgParams>) {
                require(std::isfinite(p.sigma) && p.sigma > 0.0, "VG: sigma must be positive");
                require(std::isfinite(p.nu) && p.nu > 0.0, "VG: nu must be positive");
                require(std::isfinite(p.theta), "VG: theta must be finite");
                require(1.0 - p.nu * (p.theta + 0.5 * p.sigma * p.sigma) > 0.0,
                        "VG: 1 - nu (theta + sigma^2/2) must be positive for a finite compensator");
            } else if constexpr (std::is_same_v<T, CgmyParams>) {
                require(std::isfinite(p.c) && p.c > 0.0, "CGMY: C must be positive");
                require(std::isfinite(p.g) && p.g > 0.0, "CGMY: G must be positive");
                require(std::isfinite(p.m) && p.m > 0.0, "CGMY: M must be positive");
                require(std::isfinite(p.y) && p.y > 0.0 && p.y < 2.0,
                        "CGMY: Y must lie in (0, 2)");
                require(std::fabs(p.y - 1.0) > 1e-12,
                        "CGMY: Y = 1 is a pole of Gamma(-Y) in this parameterisation");
                require(p.m > 1.0, "CGMY: M must exceed 1 for a finite compensator");
            } else {
                require(std::isfinite(p.kappa) && p.kappa > 0.0, "Heston: kappa must be positive");
                require(std::isfinite(p.delta) && p.delta > 0.0, "Heston: delta must be positive");
                require(std::isfinite(p.xi) && p.xi > 0.0, "Heston: xi must be positive");
                require(std::isfinite(p.v0) && p.v0 > 0.0, "Heston: V0 must be positive");
                // The Feller condition 2 kappa delta >= xi^2 keeps the CIR
                // rate strictly positive; parameter sets from the literature
                // (e.g. Andersen's) violate it, and the transform and the
                // full-truncation scheme stay well defined when the boundary
                // is attainable, so it is not enforced here.
            }
        },
        model);
}

void validate(const MarketParams& market) {
    require(std::isfinite(market.s0) && market.s0 > 0.0, "market: S0 must be positive");
    require(std::isfinite(market.r) && market.r >= 0.0, "market: r must be nonnegative");
    require(std::isfinite(market.q) && market.q >= 0.0, "market: q must be nonnegative");
}

void validate(const VanillaContract& contract) {
    require(std::isfinite(contract.strike) && contract.strike > 0.0,
            "contract: strike must be positive");
    require(std::isfinite(contract.maturity) && contract.maturity > 0.0,
            "contract: maturity must be positive");
}

double clock_theta(const ClockModel& model) {
    return std::visit(
        [](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, VgParams>) return p.theta;
            else if constexpr (std::is_same_v<T, CgmyParams>) return 0.5 * (p.g - p.m);
            else return -0.5;
        },
        model);
}

double clock_sigma(const ClockModel& model) {
    if (const auto* vg = std::get_if<VgParams>(&model)) return vg->sigma;
    return 1.0;
}

std::string model_name(const ClockModel& model) {
    if (std::holds_alternative<VgParams>(model)) return "vg";
    if (std::holds_alternative<CgmyParams>(model)) return "cgmy";
    return "heston";
}

std::complex<double> laplace_transform(const ClockModel& model, std::complex<double> u,
                                       double t) {
    if (!(t > 0.0)) throw DomainError("laplace_transform: t must be positive");
    return std::visit(
        [&](const auto& p) -> cd {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, VgParams>) return vg_laplace(p, u, t);
            else if constexpr (std::is_same_v<T, CgmyParams>) return cgmy_laplace(p, u, t);
            else return heston_laplace(p, u, t);
        },
        model);
}

double laplace_transform(const ClockModel& model, double u, double t) {
    return laplace_transform(model, cd(u, 0.0), t).real();
}

double omega(const ClockModel& model) {
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, VgParams>) {
                const double s = p.theta + 0.5 * p.sigma * p.sigma;
                const double arg = 1.0 - p.nu * s;
                if (arg <= 0.0) {
                    throw DomainError("omega: VG cumulant argument outside the transform domain");
                }
                return -std::log(arg) / p.nu;
            } else if constexpr (std::is_same_v<T, CgmyParams>) {
                // psi(theta + 1/2) evaluated at z = -i of the characteristic
                // function: C Gamma(-Y) [(M-1)^Y + (G+1)^Y - M^Y - G^Y].
                return p.c * std::tgamma(-p.y) *
                       (std::pow(p.m - 1.0, p.y) + std::pow(p.g + 1.0, p.y) -
                        std::pow(p.m, p.y) - std::pow(p.g, p.y));
            } else {
                (void)p;
                return 0.0;
            }
        },
        model);
}

NormalizedInputs normalized_inputs(const ClockModel& model, const MarketParams& market,
                                   const VanillaContract& contract) {
    const double sigma = clock_sigma(model);
    const double theta = clock_theta(model);
    const double w = omega(model);
    NormalizedInputs out;
    out.mu = theta / (sigma * sigma) + 0.5;
    out.x = std::log(market.s0 / contract.strike) -
            (market.q - market.r + w) * contract.maturity;
    return out;
}

std::complex<double> characteristic_exponent_x(const ClockModel& model, std::complex<double> z,
                                               double t) {
    const double sigma = clock_sigma(model);
    const double theta = clock_theta(model);
    const cd u = -(cd(0.0, 1.0) * z * theta - 0.5 * z * z * sigma * sigma);
    return std::log(laplace_transform(model, u, t)) / t;
}

ClockDynamics dynamics(const ClockModel& model) {
    ClockDynamics d;
    d.theta = clock_theta(model);
    d.sigma = clock_sigma(model);
    d.omega = omega(model);
    d.laplace = [model](cd u, double t) { return laplace_transform(model, u, t); };
    return d;
}

ClockDynamics dirac_clock(double theta, double sigma, double rate) {
    ClockDynamics d;
    d.theta = theta;
    d.sigma = sigma;
    d.omega = (theta + 0.5 * sigma * sigma) * rate;
    d.laplace = [rate](cd u, double t) { return std::exp(-u * rate * t); };
    return d;
}

} // namespace rapt::clocks
