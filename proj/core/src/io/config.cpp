#include "rapt/io/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "rapt/errors.hpp"

namespace rapt::io {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw IoError("config: cannot parse number '" + value + "' for key '" + key + "'");
    }
}

long to_long(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        const long parsed = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw IoError("config: cannot parse integer '" + value + "' for key '" + key + "'");
    }
}

// A grid is either a comma list "0.25,0.5,1" or a range "0.8:1.2:0.01".
std::vector<double> parse_grid_values(const std::string& text, const std::string& key) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::stringstream ss(text);
        std::string lo_s, hi_s, step_s;
        std::getline(ss, lo_s, ':');
        std::getline(ss, hi_s, ':');
        std::getline(ss, step_s, ':');
        const double lo = to_double(trim(lo_s), key);
        const double hi = to_double(trim(hi_s), key);
        const double step = to_double(trim(step_s), key);
        if (!(step > 0.0) || hi < lo) throw IoError("config: bad range for key '" + key + "'");
        const long count = std::lround((hi - lo) / step) + 1;
        for (long i = 0; i < count; ++i) out.push_back(lo + step * static_cast<double>(i));
        return out;
    }
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cell = trim(cell);
        if (!cell.empty()) out.push_back(to_double(cell, key));
    }
    return out;
}

std::string grid_to_string(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += format_full(values[i]);
    }
    return out;
}

} // namespace

std::string format_full(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

void RunConfig::validate() const {
    clocks::validate(model);
    clocks::validate(market);
    if (grid.strikes.empty() || grid.maturities.empty()) {
        throw ValidationError("config: strike and maturity grids must be nonempty");
    }
    for (double k : grid.strikes) {
        if (!(k > 0.0)) throw ValidationError("config: strikes must be positive");
    }
    for (double t : grid.maturities) {
        if (!(t > 0.0)) throw ValidationError("config: maturities must be positive");
    }
    if (engine.degrees.min_degree < 1 || engine.degrees.max_degree > 12 ||
        engine.degrees.min_degree > engine.degrees.max_degree) {
        throw ValidationError("config: degree policy must satisfy 1 <= min <= max <= 12");
    }
    if (engine.quad_count < 1 || !(engine.quad_lo < engine.quad_hi)) {
        throw ValidationError("config: quadrature requires l >= 1 and c < d");
    }
}

RunConfig preset(const std::string& name) {
    RunConfig config;
    config.market = clocks::MarketParams{1.0, 0.03, 0.01};
    config.grid.strikes = parse_grid_values("0.8:1.2:0.01", "strikes");
    config.grid.maturities = {0.25, 0.5, 1.0, 1.5, 2.0, 2.5};
    config.engine.truncation.policy = pricer::TruncationPolicy::candidate_search;
    if (name == "case-I") {
        config.model = clocks::VgParams{0.1213, 0.1686, -0.1436};
    } else if (name == "case-II") {
        config.model = clocks::VgParams{0.178753, 0.13317, -0.30649};
    } else if (name == "case-III") {
        config.model = clocks::HestonParams{0.87, 0.07, 0.34, 0.07};
    } else if (name == "case-IV") {
        config.model = clocks::HestonParams{0.9, 0.04, 0.3, 0.04};
    } else if (name == "case-V") {
        config.model = clocks::CgmyParams{1.0, 5.0, 10.0, 0.5};
    } else {
        throw ValidationError("unknown preset '" + name + "' (expected case-I .. case-V)");
    }
    return config;
}

std::vector<std::string> preset_names() {
    return {"case-I", "case-II", "case-III", "case-IV", "case-V"};
}

RunConfig parse_config(std::istream& in) {
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::string line, section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw IoError("config: malformed section header at line " +
                              std::to_string(line_no));
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw IoError("config: expected 'key = value' at line " + std::to_string(line_no));
        }
        sections[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }

    RunConfig config;
    auto& model_section = sections["model"];
    const std::string type = model_section.count("type") ? model_section["type"] : "";
    if (type == "vg") {
        config.model = clocks::VgParams{to_double(model_section.at("sigma"), "sigma"),
                                        to_double(model_section.at("nu"), "nu"),
                                        to_double(model_section.at("theta"), "theta")};
    } else if (type == "cgmy") {
        config.model = clocks::CgmyParams{to_double(model_section.at("c"), "c"),
                                          to_double(model_section.at("g"), "g"),
                                          to_double(model_section.at("m"), "m"),
                                          to_double(model_section.at("y"), "y")};
    } else if (type == "heston") {
        config.model = clocks::HestonParams{to_double(model_section.at("kappa"), "kappa"),
                                            to_double(model_section.at("delta"), "delta"),
                                            to_double(model_section.at("xi"), "xi"),
                                            to_double(model_section.at("v0"), "v0")};
    } else {
        throw IoError("config: [model] type must be one of vg, cgmy, heston");
    }

    auto& market_section = sections["market"];
    if (market_section.count("s0")) config.market.s0 = to_double(market_section["s0"], "s0");
    if (market_section.count("r")) config.market.r = to_double(market_section["r"], "r");
    if (market_section.count("q")) config.market.q = to_double(market_section["q"], "q");

    auto& grid_section = sections["grid"];
    if (grid_section.count("strikes")) {
        config.grid.strikes = parse_grid_values(grid_section["strikes"], "strikes");
    }
    if (grid_section.count("maturities")) {
        config.grid.maturities = parse_grid_values(grid_section["maturities"], "maturities");
    }

    auto& engine = sections["engine"];
    auto& opts = config.engine;
    if (engine.count("degree_min")) {
        opts.degrees.min_degree = static_cast<int>(to_long(engine["degree_min"], "degree_min"));
    }
    if (engine.count("degree_max")) {
        opts.degrees.max_degree = static_cast<int>(to_long(engine["degree_max"], "degree_max"));
    }
    if (engine.count("correction_degree")) {
        opts.correction_degree =
            static_cast<int>(to_long(engine["correction_degree"], "correction_degree"));
    }
    if (engine.count("slice_threshold")) {
        opts.slice_threshold = to_double(engine["slice_threshold"], "slice_threshold");
    }
    if (engine.count("quad_l")) {
        opts.quad_count = static_cast<int>(to_long(engine["quad_l"], "quad_l"));
    }
    if (engine.count("quad_c")) opts.quad_lo = to_double(engine["quad_c"], "quad_c");
    if (engine.count("quad_d")) opts.quad_hi = to_double(engine["quad_d"], "quad_d");
    if (engine.count("cache_slices")) {
        opts.cache_slices = static_cast<int>(to_long(engine["cache_slices"], "cache_slices"));
    }
    if (engine.count("truncation")) {
        const std::string& policy = engine["truncation"];
        if (policy == "quantile") {
            opts.truncation.policy = pricer::TruncationPolicy::quantile;
        } else if (policy == "candidate-search") {
            opts.truncation.policy = pricer::TruncationPolicy::candidate_search;
        } else {
            throw IoError("config: truncation must be 'quantile' or 'candidate-search'");
        }
    }
    if (engine.count("seed")) {
        opts.truncation.seed = static_cast<std::uint64_t>(to_long(engine["seed"], "seed"));
    }
    if (engine.count("paths")) {
        opts.truncation.n_paths =
            static_cast<std::size_t>(to_long(engine["paths"], "paths"));
    }
    if (engine.count("cache")) config.use_cache = engine["cache"] != "off";

    config.validate();
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    return parse_config(in);
}

std::string serialize_config(const RunConfig& config) {
    std::string out;
    out += "[model]\n";
    out += "type = " + clocks::model_name(config.model) + "\n";
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, clocks::VgParams>) {
                out += "sigma = " + format_full(p.sigma) + "\n";
                out += "nu = " + format_full(p.nu) + "\n";
                out += "theta = " + format_full(p.theta) + "\n";
            } else if constexpr (std::is_same_v<T, clocks::CgmyParams>) {
                out += "c = " + format_full(p.c) + "\n";
                out += "g = " + format_full(p.g) + "\n";
                out += "m = " + format_full(p.m) + "\n";
                out += "y = " + format_full(p.y) + "\n";
            } else {
                out += "kappa = " + format_full(p.kappa) + "\n";
                out += "delta = " + format_full(p.delta) + "\n";
                out += "xi = " + format_full(p.xi) + "\n";
                out += "v0 = " + format_full(p.v0) + "\n";
            }
        },
        config.model);
    out += "\n[market]\n";
    out += "s0 = " + format_full(config.market.s0) + "\n";
    out += "r = " + format_full(config.market.r) + "\n";
    out += "q = " + format_full(config.market.q) + "\n";
    out += "\n[grid]\n";
    out += "strikes = " + grid_to_string(config.grid.strikes) + "\n";
    out += "maturities = " + grid_to_string(config.grid.maturities) + "\n";
    out += "\n[engine]\n";
    out += "degree_min = " + std::to_string(config.engine.degrees.min_degree) + "\n";
    out += "degree_max = " + std::to_string(config.engine.degrees.max_degree) + "\n";
    out += "correction_degree = " + std::to_string(config.engine.correction_degree) + "\n";
    out += "slice_threshold = " + format_full(config.engine.slice_threshold) + "\n";
    out += "quad_l = " + std::to_string(config.engine.quad_count) + "\n";
    out += "quad_c = " + format_full(config.engine.quad_lo) + "\n";
    out += "quad_d = " + format_full(config.engine.quad_hi) + "\n";
    out += std::string("truncation = ") +
           (config.engine.truncation.policy == pricer::TruncationPolicy::quantile
                ? "quantile"
                : "candidate-search") +
           "\n";
    out += "cache_slices = " + std::to_string(config.engine.cache_slices) + "\n";
    out += "seed = " + std::to_string(config.engine.truncation.seed) + "\n";
    out += "paths = " + std::to_string(config.engine.truncation.n_paths) + "\n";
    out += std::string("cache = ") + (config.use_cache ? "on" : "off") + "\n";
    return out;
}

void save_config(const RunConfig& config, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write config file '" + path + "'");
    out << serialize_config(config);
}

std::uint64_t config_hash(const RunConfig& config) {
    const std::string text = serialize_config(config);
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace rapt::io
