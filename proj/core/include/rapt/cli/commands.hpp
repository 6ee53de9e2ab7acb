#pragma once

#include <iosfwd>
#include <string>

#include "rapt/io/config.hpp"
#include "rapt/iv/table.hpp"

namespace rapt::cli {

/// Exit codes: 0 success (possibly with per-cell warnings), 2
/// validation, 3 numerical failure, 4 I/O.
enum ExitCode { exit_ok = 0, exit_validation = 2, exit_numerical = 3, exit_io = 4 };

/// Map a thrown Error onto the exit-code contract.
int exit_code_for(const std::exception& error);

/// Price one contract; prints price, mu, x, truncation, fit_error.
int cmd_price(const io::RunConfig& config, double strike, double maturity, bool is_put,
              std::ostream& out, std::ostream& log);

/// CSV of call prices over the config grid (strike outer ascending,
/// maturity inner ascending).
int cmd_surface(const io::RunConfig& config, std::ostream& csv, std::ostream& log);

/// CSV of |RA - FFT| per cell plus a summary with max and argmax.
int cmd_compare_fft(const io::RunConfig& config, std::ostream& csv, std::ostream& log);

/// Implied-vol surface from a prices CSV (strike,maturity,price).
/// Cells outside the Li bounds fall back to the oracle solver and are
/// marked; arbitrage-violating cells are flagged and skipped.
int cmd_iv(const io::RunConfig& config, std::istream& prices_csv, const iv::IvTable& table,
           std::ostream& csv, std::ostream& log);

int cmd_build_cache(const io::RunConfig& config, const std::string& out_path, std::ostream& log);

int cmd_build_iv_table(const std::string& out_path, std::ostream& log);

/// Wall-clock comparison of the cached rational pipeline against the
/// FFT pricer over the standard grid shapes. Reports directions and
/// ratios, never absolute targets.
int cmd_bench(const io::RunConfig& config, std::ostream& out);

/// Region errors eps_[0,a], eps_[a,b], eps_[b,inf) per grid option on
/// the quantile truncation route, with max and max-after-dropping-25
/// summaries.
int cmd_error_report(const io::RunConfig& config, std::ostream& csv, std::ostream& log);

} // namespace rapt::cli
