#include "rapt/iv/table.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rapt/errors.hpp"
#include "rapt/iv/normalized.hpp"
#include "rapt/numerics/chebyshev.hpp"
#include "rapt/util/parallel.hpp"

namespace rapt::iv {

std::vector<double> iv_table_grid() {
    std::vector<double> xs;
    xs.reserve(105);
    for (int i = 0; i <= 8; ++i) xs.push_back(-0.0025 * i);
    for (int i = 0; i <= 95; ++i) xs.push_back(-0.025 - 0.005 * i);
    return xs;
}

double iv_error_bound(double x) { return x <= -0.0075 + 1e-15 ? 8.55e-7 : 5.54e-5; }

const IvTableEntry* IvTable::find_entry(double x) const {
    for (const auto& entry : entries) {
        if (std::fabs(entry.x - x) <= 1e-13) return &entry;
    }
    return nullptr;
}

namespace {

// Maximum deviation against the oracle over grids uniform in c and in
// sqrt(c), plus dense sampling around every denominator minimum: a
// spurious pole-zero pair hides a narrow error spike exactly there.
double entry_error(const IvTableEntry& entry, int points, double oracle_tol) {
    const double s_lo = std::sqrt(std::max(entry.c_lb, 0.0));
    const double s_hi = std::sqrt(entry.c_ub);
    auto err_at_s = [&](double s) {
        if (!(s > s_lo) || !(s < s_hi)) return 0.0;
        const double truth = iv_oracle(s * s, entry.x, oracle_tol);
        return std::fabs(entry.approximant(s) - truth);
    };
    double worst = 0.0;
    for (int j = 0; j < points; ++j) {
        const double c = entry.c_lb + (entry.c_ub - entry.c_lb) * (j + 0.5) / points;
        worst = std::max(worst, err_at_s(std::sqrt(c)));
    }
    for (int j = 0; j < points; ++j) {
        worst = std::max(worst, err_at_s(s_lo + (s_hi - s_lo) * (j + 0.5) / points));
    }

    const int scan_n = 2048;
    std::vector<double> den(scan_n);
    double den_max = 0.0;
    for (int i = 0; i < scan_n; ++i) {
        const double y = -1.0 + 2.0 * i / (scan_n - 1.0);
        den[i] = std::fabs(num::chebyshev_sum_plain(entry.approximant.den_cheb, y));
        den_max = std::max(den_max, den[i]);
    }
    const double h = (s_hi - s_lo) / (scan_n - 1.0);
    for (int i = 1; i + 1 < scan_n; ++i) {
        if (den[i] <= den[i - 1] && den[i] <= den[i + 1] && den[i] < 0.05 * den_max) {
            const double s_center = s_lo + h * i;
            for (int j = 0; j <= 160; ++j) {
                worst = std::max(worst, err_at_s(s_center + (j - 80) * h / 40.0));
            }
        }
    }
    return worst;
}

IvTableEntry build_entry(double x, const IvBuildOptions& options) {
    const auto [lb, ub] = li_bounds(x);
    const double s_lo = std::sqrt(std::max(lb, 0.0));
    const double s_hi = std::sqrt(ub);
    auto f = [&](double s) { return iv_oracle(s * s, x, options.oracle_tol); };

    IvTableEntry best;
    best.max_error = std::numeric_limits<double>::infinity();
    auto consider = [&](int degree, const num::RationalApproximant& approx) {
        IvTableEntry entry;
        entry.x = x;
        entry.degree = degree;
        entry.c_lb = lb;
        entry.c_ub = ub;
        entry.approximant = approx;
        entry.max_error = entry_error(entry, options.validation_points, options.oracle_tol);
        if (entry.max_error < best.max_error) best = entry;
        return best.max_error <= iv_error_bound(x);
    };

    for (int degree = options.min_degree; degree <= options.max_degree; ++degree) {
        try {
            const num::RationalApproximant fit =
                num::rational_chebyshev_fit(f, s_lo, s_hi, degree);
            if (consider(degree, fit)) return best;
            if (consider(degree, num::minimax_refine(fit, f, options.minimax_iters))) {
                return best;
            }
        } catch (const NumericalError&) {
        }
        // Ridge-regularized fallback for degrees the coefficient-matching
        // system cannot determine.
        try {
            const num::RationalApproximant fit = num::rational_ls_fit(f, s_lo, s_hi, degree);
            if (consider(degree, fit)) return best;
            if (consider(degree, num::minimax_refine(fit, f, options.minimax_iters))) {
                return best;
            }
        } catch (const NumericalError&) {
        }
    }
    if (!(best.max_error <= iv_error_bound(x))) {
        throw NumericalError("build_iv_table: no degree <= " +
                             std::to_string(options.max_degree) + " met the error bound at x = " +
                             std::to_string(x) + " (achieved " +
                             std::to_string(best.max_error) + ")");
    }
    return best;
}

} // namespace

IvTable build_iv_table(const IvBuildOptions& options) {
    const std::vector<double> xs = iv_table_grid();
    IvTable table;
    table.entries.resize(xs.size());
    util::parallel_for(xs.size(), [&](std::size_t i) {
        table.entries[i] = build_entry(xs[i], options);
    });
    return table;
}

namespace {

double eval_entry(const IvTableEntry& entry, double s) { return entry.approximant(s); }

} // namespace

double implied_v(const IvTable& table, double c, double x) {
    if (std::fabs(x) > 0.5 + 1e-12) {
        throw OutOfRangeError("implied_v: |x| = " + std::to_string(std::fabs(x)) +
                              " exceeds the supported 0.5");
    }
    if (x > 0.0) {
        const double ex = std::exp(x);
        return implied_v(table, ex * c + 1.0 - ex, -x);
    }
    const auto [lb, ub] = li_bounds(x);
    const double slack = 1e-12 * std::max(1.0, std::fabs(ub));
    if (c < lb - slack || c > ub + slack) {
        throw BoundsError("implied_v: normalized price " + std::to_string(c) +
                          " outside the Li bounds [" + std::to_string(lb) + ", " +
                          std::to_string(ub) + "] at x = " + std::to_string(x));
    }
    const double s = std::sqrt(std::max(c, 0.0));

    if (const IvTableEntry* node = table.find_entry(x)) return eval_entry(*node, s);

    // 4-point Lagrange interpolation across the (descending) x grid.
    const auto& entries = table.entries;
    std::size_t hi = entries.size() - 1;
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (entries[i].x <= x) {
            hi = i;
            break;
        }
    }
    const std::size_t anchor =
        std::min(std::max<std::size_t>(hi, 2) - 2, entries.size() - 4);
    double result = 0.0;
    for (std::size_t j = anchor; j < anchor + 4; ++j) {
        double weight = 1.0;
        for (std::size_t k = anchor; k < anchor + 4; ++k) {
            if (k == j) continue;
            weight *= (x - entries[k].x) / (entries[j].x - entries[k].x);
        }
        result += weight * eval_entry(entries[j], s);
    }
    return result;
}

double implied_vol(const IvTable& table, double price, double s0, double strike, double maturity,
                   double r, double q) {
    if (!(s0 > 0.0 && strike > 0.0 && maturity > 0.0)) {
        throw ValidationError("implied_vol: S0, K and T must be positive");
    }
    const double c = price / (s0 * std::exp(-q * maturity));
    const double x = std::log(s0 * std::exp((r - q) * maturity) / strike);
    const double floor_value = std::max(1.0 - std::exp(-x), 0.0);
    if (!(c > floor_value && c < 1.0)) {
        throw ArbitrageError("implied_vol: price violates the no-arbitrage interval");
    }
    return implied_v(table, c, x) / std::sqrt(maturity);
}

} // namespace rapt::iv
