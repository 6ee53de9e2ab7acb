#include "rapt/pricer/slice.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>

#include "rapt/errors.hpp"
#include "rapt/numerics/rational.hpp"
#include "rapt/pricer/black_scholes.hpp"

namespace rapt::pricer {

double PricedSlice::approx(double v) const {
    double acc = pf.constant;
    const auto& nodes = quad->nodes;
    for (std::size_t k = 0; k < kernel_weights.size(); ++k) {
        acc += kernel_weights[k] * std::exp(-v * nodes[k]);
    }
    if (!pf.correction_mono.empty()) {
        const double u = std::exp(-v);
        double corr = 0.0;
        for (std::size_t i = pf.correction_mono.size(); i-- > 0;) {
            corr = corr * u + pf.correction_mono[i];
        }
        acc += corr;
    }
    return acc;
}

void rebuild_slice_derived(PricedSlice& slice) {
    const num::QuadratureRule& quad = *slice.quad;
    slice.kernel_weights.assign(quad.nodes.size(), 0.0);
    for (std::size_t k = 0; k < slice.kernel_weights.size(); ++k) {
        std::complex<double> sum(0.0, 0.0);
        for (std::size_t j = 0; j < slice.pf.poles.size(); ++j) {
            sum += slice.pf.residues[j] * std::exp(slice.pf.poles[j] * quad.nodes[k]);
        }
        slice.kernel_weights[k] = quad.weights[k] * sum.real();
    }
    if (slice.pf.correction) {
        slice.pf.correction_mono = slice.pf.correction->to_monomial();
    }
}

namespace {

double end_to_end_error(const PricedSlice& slice) {
    const int grid_n = 64;
    double worst = 0.0;
    for (int i = 0; i < grid_n; ++i) {
        const double v = slice.a + (slice.b - slice.a) * i / (grid_n - 1.0);
        worst = std::max(worst, std::fabs(c_bs(v, slice.x, slice.mu) - slice.approx(v)));
    }
    return worst;
}

} // namespace

PricedSlice build_slice(double x, double mu, Interval domain, const DegreePolicy& policy,
                        std::shared_ptr<const num::QuadratureRule> quad,
                        int correction_degree, double threshold) {
    if (!(domain.lo > 0.0 && domain.lo < domain.hi)) {
        throw ValidationError("build_slice: truncation requires 0 < a < b");
    }
    auto f = [x, mu](double v) { return c_bs(v, x, mu); };

    std::vector<int> degrees;
    if (policy.forced_degree > 0) {
        degrees.push_back(policy.forced_degree);
    } else {
        for (int m = policy.min_degree; m <= policy.max_degree; ++m) degrees.push_back(m);
    }

    std::optional<PricedSlice> best;
    std::string last_failure;
    auto try_fit = [&](const num::RationalApproximant& fit) -> PricedSlice {
        num::PartialFractionForm pf = num::partial_fractions(fit, correction_degree);
        PricedSlice slice;
        slice.x = x;
        slice.mu = mu;
        slice.a = domain.lo;
        slice.b = domain.hi;
        slice.degree = fit.degree;
        slice.pf = std::move(pf);
        slice.quad = quad;
        rebuild_slice_derived(slice);
        slice.threshold = threshold;
        slice.tail_warning = domain.lo * quad->hi < 25.0;
        const int grid_n = 64;
        slice.rational_error = 0.0;
        for (int i = 0; i < grid_n; ++i) {
            const double v = slice.a + (slice.b - slice.a) * i / (grid_n - 1.0);
            slice.rational_error =
                std::max(slice.rational_error, std::fabs(f(v) - fit(v)));
        }
        slice.fit_error = end_to_end_error(slice);
        return slice;
    };
    // The rational fit is accepted against the threshold as such; the
    // end-to-end error additionally guards against ill-conditioned
    // correction expansions (quadrature-tail leaks stay well below it).
    auto acceptable = [threshold](const PricedSlice& s) {
        return s.rational_error <= threshold && s.fit_error <= 1000.0 * threshold;
    };
    for (int m : degrees) {
        // The coefficient-matching fit first; the ridge least-squares fit
        // rescues degrees where that system is rank-deficient (smooth f
        // over-parameterized at this degree).
        for (int variant = 0; variant < 2; ++variant) {
            try {
                const num::RationalApproximant fit =
                    variant == 0 ? num::rational_chebyshev_fit(f, domain.lo, domain.hi, m)
                                 : num::rational_ls_fit(f, domain.lo, domain.hi, m);
                PricedSlice slice = try_fit(fit);
                // A clean fit (no absorbed poles) within threshold ends the
                // escalation; otherwise keep the best and try further.
                if (acceptable(slice) && !slice.pf.has_correction()) return slice;
                if (!best || slice.fit_error < best->fit_error) best = std::move(slice);
            } catch (const NumericalError& err) {
                last_failure = err.what();
            }
        }
    }
    if (best && acceptable(*best)) return *best;
    const double achieved = best ? best->rational_error : std::nan("");
    throw SliceRejectedError("build_slice: no degree <= " + std::to_string(degrees.back()) +
                                 " met threshold " + std::to_string(threshold) + " at x = " +
                                 std::to_string(x) +
                                 (last_failure.empty() ? "" : " (" + last_failure + ")"),
                             achieved);
}

PricedSlice build_slice_best(double x, double mu, const std::vector<Interval>& candidates,
                             const DegreePolicy& policy,
                             std::shared_ptr<const num::QuadratureRule> quad,
                             int correction_degree, double threshold) {
    TruncationContext context;
    context.candidates = candidates;
    return build_slice_best(x, mu, context, policy, quad, correction_degree, threshold);
}

namespace {

// Price-error proxy of a candidate at this maturity: the approximation
// error integrated against the clock law as a Stieltjes sum over the
// cdf, resolved separately over [0,a], [a,b] and [b, 2b], plus a
// catch-all for the far tail. This is what the expectation actually
// feels, cancellation included.
double slice_score(const PricedSlice& slice, const std::function<double(double)>& cdf) {
    if (!cdf) return slice.fit_error;
    double acc = 0.0;
    auto add_region = [&](double lo, double hi, int bins) {
        double f_lo = cdf(lo);
        for (int i = 0; i < bins; ++i) {
            const double edge = lo + (hi - lo) * (i + 1) / bins;
            const double f_hi = cdf(edge);
            const double mid = lo + (hi - lo) * (i + 0.5) / bins;
            acc += (f_hi - f_lo) * (c_bs(mid, slice.x, slice.mu) - slice.approx(mid));
            f_lo = f_hi;
        }
    };
    add_region(0.0, slice.a, 64);
    add_region(slice.a, slice.b, 192);
    add_region(slice.b, 2.0 * slice.b, 32);
    const double tail_mass = 1.0 - cdf(2.0 * slice.b);
    const double tail_diff = c_bs(3.0 * slice.b, slice.x, slice.mu) - slice.approx(3.0 * slice.b);
    return std::fabs(acc) + std::fabs(tail_mass * tail_diff);
}

} // namespace

PricedSlice build_slice_best(double x, double mu, const TruncationContext& context,
                             const DegreePolicy& policy,
                             std::shared_ptr<const num::QuadratureRule> quad,
                             int correction_degree, double threshold) {
    // Candidates are gathered under a relaxed per-fit gate and judged by
    // the mass-weighted score: a candidate whose rational fit is rougher
    // but which sacrifices less clock mass outside [a, b] regularly wins
    // on total price error. The configured threshold still bounds what
    // is retained at all (the "delete this x" rule).
    const double gate = 50.0 * threshold;
    std::optional<PricedSlice> best;
    double best_score = std::numeric_limits<double>::infinity();
    double best_rejected = std::numeric_limits<double>::infinity();
    for (const Interval& candidate : context.candidates) {
        try {
            PricedSlice slice =
                build_slice(x, mu, candidate, policy, quad, correction_degree, gate);
            const double score = slice_score(slice, context.cdf);
            if (!best || score < best_score) {
                best = std::move(slice);
                best_score = score;
            }
        } catch (const SliceRejectedError& err) {
            best_rejected = std::min(best_rejected, err.best_error());
        }
    }
    if (!best || best_score > gate) {
        throw SliceRejectedError("build_slice_best: all truncation candidates rejected at x = " +
                                     std::to_string(x),
                                 best ? best_score : best_rejected);
    }
    best->threshold = threshold;
    return *best;
}

double price_expectation(const PricedSlice& slice, const clocks::ClockDynamics& dynamics,
                         double maturity) {
    const double s2 = dynamics.sigma * dynamics.sigma;
    double acc = slice.pf.constant;
    const auto& nodes = slice.quad->nodes;
    for (std::size_t k = 0; k < slice.kernel_weights.size(); ++k) {
        acc += slice.kernel_weights[k] *
               dynamics.laplace(std::complex<double>(s2 * nodes[k], 0.0), maturity).real();
    }
    for (std::size_t i = 0; i < slice.pf.correction_mono.size(); ++i) {
        acc += slice.pf.correction_mono[i] *
               dynamics.laplace(std::complex<double>(s2 * static_cast<double>(i), 0.0), maturity)
                   .real();
    }
    return acc;
}

double expectation_from_values(const PricedSlice& slice, std::span<const double> node_values,
                               std::span<const double> moment_values) {
    double acc = slice.pf.constant;
    for (std::size_t k = 0; k < slice.kernel_weights.size(); ++k) {
        acc += slice.kernel_weights[k] * node_values[k];
    }
    for (std::size_t i = 0; i < slice.pf.correction_mono.size(); ++i) {
        acc += slice.pf.correction_mono[i] * moment_values[i];
    }
    return acc;
}

std::shared_ptr<const num::QuadratureRule> shared_gauss_legendre(int count, double lo, double hi) {
    static std::mutex mutex;
    static std::map<std::tuple<int, double, double>, std::shared_ptr<const num::QuadratureRule>>
        rules;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_tuple(count, lo, hi);
    auto it = rules.find(key);
    if (it != rules.end()) return it->second;
    auto rule = std::make_shared<const num::QuadratureRule>(num::gauss_legendre(count, lo, hi));
    rules.emplace(key, rule);
    return rule;
}

} // namespace rapt::pricer
