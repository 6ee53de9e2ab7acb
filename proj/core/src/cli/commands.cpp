#include "rapt/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "rapt/clocks/heston_simulation.hpp"
#include "rapt/errors.hpp"
#include "rapt/fourier/carr_madan.hpp"
#include "rapt/io/csv.hpp"
#include "rapt/io/documents.hpp"
#include "rapt/iv/normalized.hpp"
#include "rapt/numerics/special.hpp"
#include "rapt/pricer/cache.hpp"
#include "rapt/pricer/error_report.hpp"
#include "rapt/pricer/pricing.hpp"
#include "rapt/util/parallel.hpp"

namespace rapt::cli {

namespace {

using clocks::OptionSide;
using clocks::VanillaContract;

std::vector<VanillaContract> grid_contracts(const io::RunConfig& config) {
    std::vector<VanillaContract> contracts;
    contracts.reserve(config.grid.strikes.size() * config.grid.maturities.size());
    for (double k : config.grid.strikes) {
        for (double t : config.grid.maturities) {
            contracts.push_back(VanillaContract{k, t, OptionSide::call});
        }
    }
    return contracts;
}

// Call prices over the config grid: result[ik][it].
std::vector<std::vector<double>> ra_price_grid(const io::RunConfig& config) {
    const auto contracts = grid_contracts(config);
    if (config.use_cache) {
        const pricer::PriceCache cache =
            pricer::build_cache(config.model, config.market, contracts, config.engine);
        return pricer::cache_price_grid(cache, config.grid.strikes, config.grid.maturities);
    }
    std::vector<std::vector<double>> prices(
        config.grid.strikes.size(), std::vector<double>(config.grid.maturities.size(), 0.0));
    for (std::size_t ik = 0; ik < config.grid.strikes.size(); ++ik) {
        for (std::size_t it = 0; it < config.grid.maturities.size(); ++it) {
            const VanillaContract contract{config.grid.strikes[ik], config.grid.maturities[it],
                                           OptionSide::call};
            prices[ik][it] = pricer::price_call(config.model, config.market, contract,
                                                config.engine);
        }
    }
    return prices;
}

std::vector<std::vector<double>> fft_price_grid(const io::RunConfig& config) {
    std::vector<std::vector<double>> prices(
        config.grid.strikes.size(), std::vector<double>(config.grid.maturities.size(), 0.0));
    for (std::size_t it = 0; it < config.grid.maturities.size(); ++it) {
        const fourier::FftGrid grid =
            fourier::carr_madan_prices(config.model, config.market, config.grid.maturities[it]);
        for (std::size_t ik = 0; ik < config.grid.strikes.size(); ++ik) {
            prices[ik][it] = fourier::carr_madan_price_at(grid, config.grid.strikes[ik]);
        }
    }
    return prices;
}

double elapsed_seconds(const std::function<void()>& body, int repetitions = 1) {
    double best = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < repetitions; ++rep) {
        const auto start = std::chrono::steady_clock::now();
        body();
        const auto stop = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(stop - start).count());
    }
    return best;
}

} // namespace

int exit_code_for(const std::exception& error) {
    if (const auto* typed = dynamic_cast<const Error*>(&error)) {
        switch (typed->kind()) {
            case Error::Kind::validation: return exit_validation;
            case Error::Kind::numerical: return exit_numerical;
            case Error::Kind::io: return exit_io;
        }
    }
    return exit_numerical;
}

int cmd_price(const io::RunConfig& config, double strike, double maturity, bool is_put,
              std::ostream& out, std::ostream& log) {
    config.validate();
    const VanillaContract call{strike, maturity, OptionSide::call};
    const pricer::PriceRecord record =
        pricer::price_call_record(config.model, config.market, call, config.engine);
    double price = record.price;
    if (is_put) {
        price += strike * std::exp(-config.market.r * maturity) -
                 config.market.s0 * std::exp(-config.market.q * maturity);
    }
    out << "price = " << io::format_full(price) << '\n';
    out << "side = " << (is_put ? "put" : "call") << '\n';
    out << "mu = " << io::format_full(record.mu) << '\n';
    out << "x = " << io::format_full(record.x) << '\n';
    out << "truncation_a = " << io::format_full(record.truncation.lo) << '\n';
    out << "truncation_b = " << io::format_full(record.truncation.hi) << '\n';
    out << "degree = " << record.degree << '\n';
    out << "fit_error = " << io::format_full(record.fit_error) << '\n';
    if (record.tail_warning) {
        log << "warning: a*d = " << io::format_full(record.truncation.lo * config.engine.quad_hi)
            << " < 25; quadrature tail decay is marginal for this truncation\n";
    }
    return exit_ok;
}

int cmd_surface(const io::RunConfig& config, std::ostream& csv, std::ostream& log) {
    config.validate();
    io::CsvWriter writer(csv);
    writer.header({"strike", "maturity", "price", "status"});

    std::optional<pricer::PriceCache> cache;
    if (config.use_cache) {
        cache = pricer::build_cache(config.model, config.market, grid_contracts(config),
                                    config.engine);
    }
    std::size_t fallbacks = 0;
    for (double k : config.grid.strikes) {
        for (double t : config.grid.maturities) {
            const VanillaContract contract{k, t, OptionSide::call};
            std::string status = "ok";
            double price;
            try {
                price = cache ? pricer::price_with_cache(*cache, contract)
                              : pricer::price_call(config.model, config.market, contract,
                                                   config.engine);
            } catch (const OutOfRangeError&) {
                price = pricer::price_call(config.model, config.market, contract, config.engine);
                status = "fallback";
                ++fallbacks;
            }
            writer.row({io::csv_number(k), io::csv_number(t), io::csv_number(price), status});
        }
    }
    if (fallbacks > 0) {
        log << "warning: " << fallbacks << " cells priced by the direct route\n";
    }
    return exit_ok;
}

int cmd_compare_fft(const io::RunConfig& config, std::ostream& csv, std::ostream& log) {
    config.validate();
    const auto ra = ra_price_grid(config);
    const auto fft = fft_price_grid(config);

    io::CsvWriter writer(csv);
    writer.header({"strike", "maturity", "ra_price", "fft_price", "abs_diff"});
    double max_diff = -1.0;
    double arg_k = 0.0, arg_t = 0.0;
    for (std::size_t ik = 0; ik < config.grid.strikes.size(); ++ik) {
        for (std::size_t it = 0; it < config.grid.maturities.size(); ++it) {
            const double diff = std::fabs(ra[ik][it] - fft[ik][it]);
            writer.row({io::csv_number(config.grid.strikes[ik]),
                        io::csv_number(config.grid.maturities[it]), io::csv_number(ra[ik][it]),
                        io::csv_number(fft[ik][it]), io::csv_number(diff)});
            if (diff > max_diff) {
                max_diff = diff;
                arg_k = config.grid.strikes[ik];
                arg_t = config.grid.maturities[it];
            }
        }
    }
    log << "max |RA - FFT| = " << io::csv_number(max_diff) << " at strike "
        << io::format_full(arg_k) << ", maturity " << io::format_full(arg_t) << '\n';
    return exit_ok;
}

int cmd_iv(const io::RunConfig& config, std::istream& prices_csv, const iv::IvTable& table,
           std::ostream& csv, std::ostream& log) {
    io::CsvWriter writer(csv);
    writer.header({"strike", "maturity", "sigma_iv", "fallback", "status"});

    std::string line;
    std::size_t line_no = 0;
    std::size_t flagged = 0, fallbacks = 0;
    const double s0 = config.market.s0;
    const double r = config.market.r;
    const double q = config.market.q;
    while (std::getline(prices_csv, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string k_s, t_s, p_s;
        std::getline(row, k_s, ',');
        std::getline(row, t_s, ',');
        std::getline(row, p_s, ',');
        double strike, maturity, price;
        try {
            strike = std::stod(k_s);
            maturity = std::stod(t_s);
            price = std::stod(p_s);
        } catch (const std::exception&) {
            if (line_no == 1) continue; // header row
            throw IoError("cmd_iv: malformed CSV row " + std::to_string(line_no));
        }
        std::string status = "ok";
        std::string sigma_text;
        int fallback = 0;
        try {
            const double sigma = iv::implied_vol(table, price, s0, strike, maturity, r, q);
            sigma_text = io::csv_number(sigma);
        } catch (const ArbitrageError&) {
            status = "arb";
            ++flagged;
        } catch (const NumericalError&) {
            // Outside the table bounds: solve with the oracle instead.
            const double c = price / (s0 * std::exp(-q * maturity));
            const double x = std::log(s0 * std::exp((r - q) * maturity) / strike);
            const double v = iv::iv_oracle(c, x);
            sigma_text = io::csv_number(v / std::sqrt(maturity));
            fallback = 1;
            ++fallbacks;
        }
        writer.row({io::csv_number(strike), io::csv_number(maturity), sigma_text,
                    std::to_string(fallback), status});
    }
    if (flagged > 0) log << "warning: " << flagged << " cells violate no-arbitrage bounds\n";
    if (fallbacks > 0) log << "note: " << fallbacks << " cells solved by the oracle fallback\n";
    return exit_ok;
}

int cmd_build_cache(const io::RunConfig& config, const std::string& out_path, std::ostream& log) {
    config.validate();
    const pricer::PriceCache cache =
        pricer::build_cache(config.model, config.market, grid_contracts(config), config.engine);
    io::save_cache_file(cache, io::config_hash(config), out_path);
    double worst = 0.0;
    std::size_t kept = 0;
    for (const auto& group : cache.groups) {
        kept += group.slices.size();
        for (const auto& slice : group.slices) worst = std::max(worst, slice.fit_error);
    }
    log << "cache: " << kept << "/"
        << cache.groups.size() * static_cast<std::size_t>(config.engine.cache_slices)
        << " slices kept across " << cache.groups.size() << " maturities\n";
    log << "cache: worst slice fit error " << io::csv_number(worst) << '\n';
    return exit_ok;
}

int cmd_build_iv_table(const std::string& out_path, std::ostream& log) {
    const iv::IvBuildOptions options;
    const iv::IvTable table = iv::build_iv_table(options);
    // Hash of the build options so a reload can be matched to its recipe.
    std::uint64_t h = 14695981039346656037ull;
    for (int value : {options.min_degree, options.max_degree, options.minimax_iters,
                      options.validation_points}) {
        h = (h ^ static_cast<std::uint64_t>(value)) * 1099511628211ull;
    }
    io::save_iv_table_file(table, h, out_path);
    double worst_tight = 0.0, worst_loose = 0.0;
    for (const auto& entry : table.entries) {
        if (entry.x <= -0.0075 + 1e-15) {
            worst_tight = std::max(worst_tight, entry.max_error);
        } else {
            worst_loose = std::max(worst_loose, entry.max_error);
        }
    }
    log << "iv-table: " << table.entries.size() << " entries; max error "
        << io::csv_number(worst_tight) << " (x <= -0.0075), " << io::csv_number(worst_loose)
        << " (x > -0.0075)\n";
    return exit_ok;
}

int cmd_bench(const io::RunConfig& config, std::ostream& out) {
    config.validate();
    struct Shape {
        std::size_t maturities;
        std::size_t strikes;
    };
    const std::vector<Shape> shapes{{41, 7}, {7, 41}, {100, 100}, {300, 300}, {300, 5}, {5, 300}};

    out << "maturities,strikes,fft_seconds,ra_warm_seconds,ra_cold_seconds,fft_over_ra_warm\n";
    for (const Shape& shape : shapes) {
        std::vector<double> maturities(shape.maturities), strikes(shape.strikes);
        for (std::size_t i = 0; i < shape.maturities; ++i) {
            maturities[i] = shape.maturities == 1
                                ? 0.25
                                : 0.25 + (2.5 - 0.25) * i / (shape.maturities - 1.0);
        }
        for (std::size_t i = 0; i < shape.strikes; ++i) {
            strikes[i] =
                shape.strikes == 1 ? 1.0 : 0.8 + (1.2 - 0.8) * i / (shape.strikes - 1.0);
        }
        std::vector<VanillaContract> contracts;
        for (double k : strikes) {
            for (double t : maturities) contracts.push_back({k, t, OptionSide::call});
        }

        const auto build_start = std::chrono::steady_clock::now();
        const pricer::PriceCache cache =
            pricer::build_cache(config.model, config.market, contracts, config.engine);
        const double build_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - build_start)
                .count();

        volatile double sink = 0.0;
        const double ra_warm = elapsed_seconds(
            [&] {
                const auto grid = pricer::cache_price_grid(cache, strikes, maturities);
                sink = grid[0][0];
            },
            3);
        const double fft_seconds = elapsed_seconds(
            [&] {
                double acc = 0.0;
                for (double t : maturities) {
                    const fourier::FftGrid grid =
                        fourier::carr_madan_prices(config.model, config.market, t);
                    for (double k : strikes) acc += fourier::carr_madan_price_at(grid, k);
                }
                sink = acc;
            },
            3);
        (void)sink;
        out << shape.maturities << ',' << shape.strikes << ',' << io::csv_number(fft_seconds)
            << ',' << io::csv_number(ra_warm) << ',' << io::csv_number(build_seconds + ra_warm)
            << ',' << io::csv_number(fft_seconds / ra_warm) << '\n';
    }
    return exit_ok;
}

int cmd_error_report(const io::RunConfig& config, std::ostream& csv, std::ostream& log) {
    config.validate();
    if (std::holds_alternative<clocks::CgmyParams>(config.model)) {
        throw SimulationUnavailableError(
            "cmd_error_report: CGMY has no closed-form density and no simulator");
    }
    const auto dyn = clocks::dynamics(config.model);
    const double sigma2 = dyn.sigma * dyn.sigma;
    auto quad = pricer::shared_gauss_legendre(config.engine.quad_count, config.engine.quad_lo,
                                              config.engine.quad_hi);

    // Region errors use the quantile truncation route per maturity, with
    // no acceptance threshold: every option is reported as fitted.
    pricer::DegreePolicy policy = config.engine.degrees;
    const double no_threshold = std::numeric_limits<double>::infinity();

    const auto* vg = std::get_if<clocks::VgParams>(&config.model);
    const auto* heston = std::get_if<clocks::HestonParams>(&config.model);

    struct PerMaturity {
        pricer::Interval domain;
        std::vector<double> samples;          // Heston
        std::function<double(double)> density; // VG
        double upper = 0.0;
    };
    std::vector<PerMaturity> per_t(config.grid.maturities.size());
    for (std::size_t it = 0; it < per_t.size(); ++it) {
        const double t = config.grid.maturities[it];
        pricer::TruncationOptions trunc = config.engine.truncation;
        trunc.policy = pricer::TruncationPolicy::quantile;
        per_t[it].domain = pricer::quantile_truncation(config.model, t, t, trunc);
        if (vg) {
            const double shape = t / vg->nu;
            const double scale = sigma2 * vg->nu;
            per_t[it].density = [shape, scale](double z) {
                return num::gamma_pdf(z, shape, scale);
            };
            per_t[it].upper = num::gamma_quantile(1.0 - 1e-13, shape, scale);
        } else {
            const std::size_t steps =
                static_cast<std::size_t>(std::clamp(std::ceil(200.0 * t), 128.0, 1024.0));
            per_t[it].samples = clocks::simulate_heston_clock(
                *heston, t, config.engine.truncation.n_paths, steps,
                config.engine.truncation.seed);
        }
    }

    struct Cell {
        double strike, maturity, x, a, b;
        pricer::RegionErrors eps;
    };
    const std::size_t n_cells = config.grid.strikes.size() * config.grid.maturities.size();
    std::vector<Cell> cells(n_cells);
    util::parallel_for(n_cells, [&](std::size_t idx) {
        const std::size_t ik = idx / config.grid.maturities.size();
        const std::size_t it = idx % config.grid.maturities.size();
        const double k = config.grid.strikes[ik];
        const double t = config.grid.maturities[it];
        const auto in = clocks::normalized_inputs(config.model, config.market,
                                                  {k, t, OptionSide::call});
        const pricer::PricedSlice slice =
            pricer::build_slice(in.x, in.mu, per_t[it].domain, policy, quad,
                                config.engine.correction_degree, no_threshold);
        Cell cell{k, t, in.x, slice.a, slice.b, {}};
        cell.eps = vg ? pricer::error_report(slice, per_t[it].density, per_t[it].upper)
                      : pricer::error_report(slice, per_t[it].samples);
        cells[idx] = cell;
    });

    io::CsvWriter writer(csv);
    writer.header({"strike", "maturity", "x", "a", "b", "eps_below", "eps_inside", "eps_above"});
    for (const Cell& cell : cells) {
        writer.row({io::csv_number(cell.strike), io::csv_number(cell.maturity),
                    io::csv_number(cell.x), io::csv_number(cell.a), io::csv_number(cell.b),
                    io::csv_number(cell.eps.below), io::csv_number(cell.eps.inside),
                    io::csv_number(cell.eps.above)});
    }

    auto summarize = [&](auto pick, const char* label) {
        std::vector<double> magnitudes(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) {
            magnitudes[i] = std::fabs(pick(cells[i].eps));
        }
        std::sort(magnitudes.begin(), magnitudes.end());
        const double max_all = magnitudes.back();
        const std::size_t keep = magnitudes.size() > 25 ? magnitudes.size() - 25 : 0;
        const double max_drop25 = keep > 0 ? magnitudes[keep - 1] : 0.0;
        log << label << ": max " << io::csv_number(max_all) << ", max-after-drop-25 "
            << io::csv_number(max_drop25) << '\n';
    };
    summarize([](const pricer::RegionErrors& e) { return e.below; }, "eps_below");
    summarize([](const pricer::RegionErrors& e) { return e.inside; }, "eps_inside");
    summarize([](const pricer::RegionErrors& e) { return e.above; }, "eps_above");
    return exit_ok;
}

} // namespace rapt::cli
