#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>

#include "rapt/cli/commands.hpp"
#include "rapt/errors.hpp"
#include "rapt/io/documents.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string preset;
    std::string out_path;
    std::string cache_path;
    std::string iv_table_path;
    long seed = -1;
    int quad_l = 0;
    double quad_d = 0.0;
    int degree_max = 0;
};

void add_common(CLI::App* app, CommonFlags& flags, bool needs_model = true) {
    if (needs_model) {
        app->add_option("--config", flags.config_path, "Run configuration file");
        app->add_option("--preset", flags.preset, "Named parameter preset (case-I .. case-V)");
    }
    app->add_option("--out", flags.out_path, "Output path (default: stdout)");
    app->add_option("--seed", flags.seed, "Simulation seed override");
    app->add_option("--cache", flags.cache_path, "Price-cache document path");
    app->add_option("--iv-table", flags.iv_table_path, "Implied-vol table document path");
    app->add_option("--quad-l", flags.quad_l, "Gauss-Legendre point count override");
    app->add_option("--quad-d", flags.quad_d, "Quadrature upper limit override");
    app->add_option("--degree-max", flags.degree_max, "Maximum rational degree override");
}

rapt::io::RunConfig resolve_config(const CommonFlags& flags) {
    rapt::io::RunConfig config;
    if (!flags.config_path.empty()) {
        config = rapt::io::load_config(flags.config_path);
    } else if (!flags.preset.empty()) {
        config = rapt::io::preset(flags.preset);
    } else {
        throw rapt::ValidationError("either --config or --preset is required");
    }
    if (flags.seed >= 0) config.engine.truncation.seed = static_cast<std::uint64_t>(flags.seed);
    if (flags.quad_l > 0) config.engine.quad_count = flags.quad_l;
    if (flags.quad_d > 0.0) config.engine.quad_hi = flags.quad_d;
    if (flags.degree_max > 0) config.engine.degrees.max_degree = flags.degree_max;
    config.validate();
    return config;
}

// Writes either to --out (binary mode, LF endings) or stdout.
class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw rapt::IoError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vanilla option pricing in time-changed Brownian motion models via rational "
                 "approximations, with an FFT reference pricer and fast implied volatility"};
    app.require_subcommand(1);

    CommonFlags flags;
    double strike = 1.0;
    double maturity = 1.0;
    std::string side = "call";
    std::string prices_path;

    auto* price = app.add_subcommand("price", "Price one vanilla option");
    add_common(price, flags);
    price->add_option("--strike,-K", strike, "Strike")->required();
    price->add_option("--maturity,-T", maturity, "Maturity in years")->required();
    price->add_option("--side", side, "call or put")
        ->check(CLI::IsMember({"call", "put"}));

    auto* surface = app.add_subcommand("surface", "CSV of call prices over the config grid");
    add_common(surface, flags);

    auto* compare = app.add_subcommand("compare-fft",
                                       "CSV of |RA - FFT| differences over the config grid");
    add_common(compare, flags);

    auto* iv = app.add_subcommand("iv", "Implied-vol surface from a prices CSV");
    add_common(iv, flags);
    iv->add_option("--prices", prices_path, "Input CSV (strike,maturity,price)")->required();

    auto* build_cache = app.add_subcommand("build-cache", "Build and persist a price cache");
    add_common(build_cache, flags);

    auto* build_table =
        app.add_subcommand("build-iv-table", "Build and persist the implied-vol table");
    add_common(build_table, flags, /*needs_model=*/false);

    auto* bench = app.add_subcommand("bench", "Timing comparison of the RA and FFT pricers");
    add_common(bench, flags);

    auto* error_report =
        app.add_subcommand("error-report", "Per-option region errors of the approximation");
    add_common(error_report, flags);

    CLI11_PARSE(app, argc, argv);

    try {
        OutputTarget out(flags.out_path);
        if (price->parsed()) {
            return rapt::cli::cmd_price(resolve_config(flags), strike, maturity, side == "put",
                                        out.stream(), std::cerr);
        }
        if (surface->parsed()) {
            return rapt::cli::cmd_surface(resolve_config(flags), out.stream(), std::cerr);
        }
        if (compare->parsed()) {
            return rapt::cli::cmd_compare_fft(resolve_config(flags), out.stream(), std::cerr);
        }
        if (iv->parsed()) {
            const rapt::io::RunConfig config = resolve_config(flags);
            rapt::iv::IvTable table;
            if (!flags.iv_table_path.empty()) {
                table = rapt::io::load_iv_table_file(flags.iv_table_path);
            } else {
                std::cerr << "note: no --iv-table given, building the table in memory\n";
                table = rapt::iv::build_iv_table();
            }
            std::ifstream prices(prices_path);
            if (!prices) throw rapt::IoError("cannot open prices file '" + prices_path + "'");
            return rapt::cli::cmd_iv(config, prices, table, out.stream(), std::cerr);
        }
        if (build_cache->parsed()) {
            if (flags.cache_path.empty() && flags.out_path.empty()) {
                throw rapt::ValidationError("build-cache needs --cache or --out path");
            }
            const std::string path =
                flags.cache_path.empty() ? flags.out_path : flags.cache_path;
            return rapt::cli::cmd_build_cache(resolve_config(flags), path, std::cerr);
        }
        if (build_table->parsed()) {
            if (flags.iv_table_path.empty() && flags.out_path.empty()) {
                throw rapt::ValidationError("build-iv-table needs --iv-table or --out path");
            }
            const std::string path =
                flags.iv_table_path.empty() ? flags.out_path : flags.iv_table_path;
            return rapt::cli::cmd_build_iv_table(path, std::cerr);
        }
        if (bench->parsed()) {
            return rapt::cli::cmd_bench(resolve_config(flags), out.stream());
        }
        if (error_report->parsed()) {
            return rapt::cli::cmd_error_report(resolve_config(flags), out.stream(), std::cerr);
        }
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << '\n';
        return rapt::cli::exit_code_for(error);
    }
    return 0;
}
