#pragma once

#include <vector>

#include "rapt/numerics/rational.hpp"

namespace rapt::iv {

/// One precomputed inverse-map approximant: v_IV as a rational function
/// of s = sqrt(c) on [sqrt(c_LB(x)), sqrt(c_UB(x))].
struct IvTableEntry {
    double x = 0.0;
    int degree = 0;
    num::RationalApproximant approximant;
    double c_lb = 0.0;
    double c_ub = 0.0;
    double max_error = 0.0; // vs iv_oracle on the validation grid
};

/// 105 one-dimensional approximants of the inverse normalized call on
/// the x grid {0, -0.0025, ..., -0.02} u {-0.025, -0.03, ..., -0.5}.
struct IvTable {
    std::vector<IvTableEntry> entries; // x strictly decreasing from 0

    const IvTableEntry* find_entry(double x) const;
};

/// The 105 grid values, strictly decreasing.
std::vector<double> iv_table_grid();

/// Per-entry error bound: 8.55e-7 for x <= -0.0075, 5.54e-5 closer to 0.
double iv_error_bound(double x);

struct IvBuildOptions {
    int min_degree = 7;
    int max_degree = 9;
    int minimax_iters = 6;
    double oracle_tol = 1e-12;
    int validation_points = 1001;
};

/// Deterministic build; escalates the degree per entry until its error
/// bound holds and throws NumericalError naming the offending x when no
/// degree <= max_degree suffices.
IvTable build_iv_table(const IvBuildOptions& options = {});

/// Inverse map v_IV(c, x) for |x| <= 0.5: positive x is reduced by
/// v_IV(c, x) = v_IV(e^x c + 1 - e^x, -x); table entries are evaluated
/// at sqrt(c) and interpolated across x (4-point Lagrange). Throws
/// BoundsError when c leaves [c_LB, c_UB] and OutOfRangeError when
/// |x| > 0.5.
double implied_v(const IvTable& table, double c, double x);

/// Black-Scholes implied volatility of a call price: normalizes the
/// price, inverts through the table, divides by sqrt(T). Throws
/// ArbitrageError outside the static no-arbitrage interval.
double implied_vol(const IvTable& table, double price, double s0, double strike, double maturity,
                   double r, double q);

} // namespace rapt::iv
