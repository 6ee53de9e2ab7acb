#include "rapt/io/documents.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "rapt/errors.hpp"

namespace rapt::io {

namespace {

constexpr int kCacheVersion = 1;
constexpr int kIvTableVersion = 1;

std::string next_line(std::istream& in, const std::string& context) {
    std::string line;
    if (!std::getline(in, line)) throw IoError(context + ": unexpected end of document");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream ss(line);
    std::string token;
    while (ss >> token) tokens.push_back(token);
    return tokens;
}

double parse_double(const std::string& token, const std::string& context) {
    try {
        return std::stod(token);
    } catch (const std::exception&) {
        throw IoError(context + ": malformed number '" + token + "'");
    }
}

void write_model(std::ostream& out, const clocks::ClockModel& model) {
    out << "model " << clocks::model_name(model);
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, clocks::VgParams>) {
                out << ' ' << format_full(p.sigma) << ' ' << format_full(p.nu) << ' '
                    << format_full(p.theta);
            } else if constexpr (std::is_same_v<T, clocks::CgmyParams>) {
                out << ' ' << format_full(p.c) << ' ' << format_full(p.g) << ' '
                    << format_full(p.m) << ' ' << format_full(p.y);
            } else {
                out << ' ' << format_full(p.kappa) << ' ' << format_full(p.delta) << ' '
                    << format_full(p.xi) << ' ' << format_full(p.v0);
            }
        },
        model);
    out << '\n';
}

clocks::ClockModel parse_model(const std::vector<std::string>& tokens,
                               const std::string& context) {
    if (tokens.size() < 2) throw IoError(context + ": malformed model line");
    const std::string& kind = tokens[1];
    auto value = [&](std::size_t i) { return parse_double(tokens.at(i), context); };
    if (kind == "vg") return clocks::VgParams{value(2), value(3), value(4)};
    if (kind == "cgmy") return clocks::CgmyParams{value(2), value(3), value(4), value(5)};
    if (kind == "heston") return clocks::HestonParams{value(2), value(3), value(4), value(5)};
    throw IoError(context + ": unknown model kind '" + kind + "'");
}

} // namespace

void save_cache(const pricer::PriceCache& cache, std::uint64_t build_config_hash,
                std::ostream& out) {
    out << "rapt-cache " << kCacheVersion << '\n';
    out << "config-hash " << build_config_hash << '\n';
    out << "fingerprint " << cache.fingerprint << '\n';
    write_model(out, cache.model);
    out << "market " << format_full(cache.market.s0) << ' ' << format_full(cache.market.r) << ' '
        << format_full(cache.market.q) << '\n';
    out << "mu " << format_full(cache.mu) << '\n';
    out << "omega " << format_full(cache.omega) << '\n';
    const auto& quad = *cache.groups.front().slices.front().quad;
    out << "quad " << quad.count() << ' ' << format_full(quad.lo) << ' ' << format_full(quad.hi)
        << '\n';
    out << "maturities " << cache.groups.size() << '\n';
    for (const auto& group : cache.groups) {
        out << "group " << format_full(group.maturity) << ' ' << group.slices.size() << '\n';
        for (const auto& slice : group.slices) {
            out << "slice " << format_full(slice.x) << ' ' << format_full(slice.a) << ' '
                << format_full(slice.b) << ' ' << slice.degree << ' '
                << format_full(slice.fit_error) << ' ' << format_full(slice.threshold) << ' '
                << (slice.tail_warning ? 1 : 0) << ' ' << format_full(slice.pf.constant) << ' '
                << slice.pf.poles.size() << ' ' << (slice.pf.correction ? 1 : 0) << '\n';
            for (std::size_t j = 0; j < slice.pf.poles.size(); ++j) {
                out << "pole " << format_full(slice.pf.poles[j].real()) << ' '
                    << format_full(slice.pf.poles[j].imag()) << ' '
                    << format_full(slice.pf.residues[j].real()) << ' '
                    << format_full(slice.pf.residues[j].imag()) << '\n';
            }
            if (slice.pf.correction) {
                const auto& series = *slice.pf.correction;
                out << "correction " << series.coefficients().size();
                for (double c : series.coefficients()) out << ' ' << format_full(c);
                out << '\n';
            }
        }
    }
    out << "end\n";
}

void save_cache_file(const pricer::PriceCache& cache, std::uint64_t build_config_hash,
                     const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write cache file '" + path + "'");
    save_cache(cache, build_config_hash, out);
}

pricer::PriceCache load_cache(std::istream& in) {
    const std::string context = "cache document";
    auto header = split(next_line(in, context));
    if (header.size() != 2 || header[0] != "rapt-cache") {
        throw IoError(context + ": missing 'rapt-cache <version>' header");
    }
    if (std::stoi(header[1]) != kCacheVersion) {
        throw IoError(context + ": unsupported schema version " + header[1] + " (expected " +
                      std::to_string(kCacheVersion) + ")");
    }
    pricer::PriceCache cache;
    auto config_hash_line = split(next_line(in, context));
    if (config_hash_line.size() != 2 || config_hash_line[0] != "config-hash") {
        throw IoError(context + ": expected config-hash line");
    }
    auto fingerprint_line = split(next_line(in, context));
    if (fingerprint_line.size() != 2 || fingerprint_line[0] != "fingerprint") {
        throw IoError(context + ": expected fingerprint line");
    }
    cache.fingerprint = std::stoull(fingerprint_line[1]);
    cache.model = parse_model(split(next_line(in, context)), context);
    auto market_line = split(next_line(in, context));
    if (market_line.size() != 4 || market_line[0] != "market") {
        throw IoError(context + ": expected market line");
    }
    cache.market = clocks::MarketParams{parse_double(market_line[1], context),
                                        parse_double(market_line[2], context),
                                        parse_double(market_line[3], context)};
    auto mu_line = split(next_line(in, context));
    if (mu_line.size() != 2 || mu_line[0] != "mu") throw IoError(context + ": expected mu line");
    cache.mu = parse_double(mu_line[1], context);
    auto omega_line = split(next_line(in, context));
    if (omega_line.size() != 2 || omega_line[0] != "omega") {
        throw IoError(context + ": expected omega line");
    }
    cache.omega = parse_double(omega_line[1], context);
    auto quad_line = split(next_line(in, context));
    if (quad_line.size() != 4 || quad_line[0] != "quad") {
        throw IoError(context + ": expected quad line");
    }
    auto quad = pricer::shared_gauss_legendre(std::stoi(quad_line[1]),
                                              parse_double(quad_line[2], context),
                                              parse_double(quad_line[3], context));
    auto count_line = split(next_line(in, context));
    if (count_line.size() != 2 || count_line[0] != "maturities") {
        throw IoError(context + ": expected maturities line");
    }
    const std::size_t n_groups = std::stoul(count_line[1]);
    cache.groups.reserve(n_groups);
    for (std::size_t g = 0; g < n_groups; ++g) {
        auto group_line = split(next_line(in, context));
        if (group_line.size() != 3 || group_line[0] != "group") {
            throw IoError(context + ": malformed group record");
        }
        pricer::MaturitySlices group;
        group.maturity = parse_double(group_line[1], context);
        const std::size_t n_slices = std::stoul(group_line[2]);
        group.slices.reserve(n_slices);
        for (std::size_t i = 0; i < n_slices; ++i) {
            auto tokens = split(next_line(in, context));
            if (tokens.size() != 11 || tokens[0] != "slice") {
                throw IoError(context + ": malformed slice record");
            }
            pricer::PricedSlice slice;
            slice.x = parse_double(tokens[1], context);
            slice.a = parse_double(tokens[2], context);
            slice.b = parse_double(tokens[3], context);
            slice.degree = std::stoi(tokens[4]);
            slice.fit_error = parse_double(tokens[5], context);
            slice.threshold = parse_double(tokens[6], context);
            slice.tail_warning = tokens[7] == "1";
            slice.mu = cache.mu;
            slice.pf.constant = parse_double(tokens[8], context);
            slice.pf.a = slice.a;
            slice.pf.b = slice.b;
            const std::size_t n_poles = std::stoul(tokens[9]);
            const bool has_correction = tokens[10] == "1";
            for (std::size_t j = 0; j < n_poles; ++j) {
                auto pole_tokens = split(next_line(in, context));
                if (pole_tokens.size() != 5 || pole_tokens[0] != "pole") {
                    throw IoError(context + ": malformed pole record");
                }
                slice.pf.poles.emplace_back(parse_double(pole_tokens[1], context),
                                            parse_double(pole_tokens[2], context));
                slice.pf.residues.emplace_back(parse_double(pole_tokens[3], context),
                                               parse_double(pole_tokens[4], context));
            }
            if (has_correction) {
                auto corr_tokens = split(next_line(in, context));
                if (corr_tokens.size() < 3 || corr_tokens[0] != "correction") {
                    throw IoError(context + ": malformed correction record");
                }
                const std::size_t n_coeffs = std::stoul(corr_tokens[1]);
                if (corr_tokens.size() != n_coeffs + 2) {
                    throw IoError(context + ": correction coefficient count mismatch");
                }
                std::vector<double> coeffs(n_coeffs);
                for (std::size_t c = 0; c < n_coeffs; ++c) {
                    coeffs[c] = parse_double(corr_tokens[c + 2], context);
                }
                slice.pf.correction = num::ChebyshevSeries(std::move(coeffs), std::exp(-slice.b),
                                                           std::exp(-slice.a));
            }
            slice.quad = quad;
            pricer::rebuild_slice_derived(slice);
            group.slices.push_back(std::move(slice));
        }
        cache.groups.push_back(std::move(group));
    }
    if (next_line(in, context) != "end") throw IoError(context + ": missing end marker");
    if (cache.groups.empty()) throw IoError(context + ": no maturity groups");
    cache.fingerprint = pricer::parameter_fingerprint(cache.model, cache.market);
    return cache;
}

pricer::PriceCache load_cache_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open cache file '" + path + "'");
    return load_cache(in);
}

void save_iv_table(const iv::IvTable& table, std::uint64_t build_config_hash,
                   std::ostream& out) {
    out << "rapt-iv-table " << kIvTableVersion << '\n';
    out << "config-hash " << build_config_hash << '\n';
    out << "entries " << table.entries.size() << '\n';
    for (const auto& entry : table.entries) {
        out << "entry " << format_full(entry.x) << ' ' << entry.degree << ' '
            << format_full(entry.c_lb) << ' ' << format_full(entry.c_ub) << ' '
            << format_full(entry.max_error) << ' ' << format_full(entry.approximant.a) << ' '
            << format_full(entry.approximant.b) << '\n';
        out << "num";
        for (double c : entry.approximant.num_cheb) out << ' ' << format_full(c);
        out << '\n';
        out << "den";
        for (double c : entry.approximant.den_cheb) out << ' ' << format_full(c);
        out << '\n';
    }
    out << "end\n";
}

void save_iv_table_file(const iv::IvTable& table, std::uint64_t build_config_hash,
                        const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write iv-table file '" + path + "'");
    save_iv_table(table, build_config_hash, out);
}

iv::IvTable load_iv_table(std::istream& in) {
    const std::string context = "iv-table document";
    auto header = split(next_line(in, context));
    if (header.size() != 2 || header[0] != "rapt-iv-table") {
        throw IoError(context + ": missing 'rapt-iv-table <version>' header");
    }
    if (std::stoi(header[1]) != kIvTableVersion) {
        throw IoError(context + ": unsupported schema version " + header[1] + " (expected " +
                      std::to_string(kIvTableVersion) + ")");
    }
    auto config_hash_line = split(next_line(in, context));
    if (config_hash_line.size() != 2 || config_hash_line[0] != "config-hash") {
        throw IoError(context + ": expected config-hash line");
    }
    auto count_line = split(next_line(in, context));
    if (count_line.size() != 2 || count_line[0] != "entries") {
        throw IoError(context + ": expected entries line");
    }
    iv::IvTable table;
    const std::size_t n_entries = std::stoul(count_line[1]);
    table.entries.reserve(n_entries);
    for (std::size_t i = 0; i < n_entries; ++i) {
        auto tokens = split(next_line(in, context));
        if (tokens.size() != 8 || tokens[0] != "entry") {
            throw IoError(context + ": malformed entry record");
        }
        iv::IvTableEntry entry;
        entry.x = parse_double(tokens[1], context);
        entry.degree = std::stoi(tokens[2]);
        entry.c_lb = parse_double(tokens[3], context);
        entry.c_ub = parse_double(tokens[4], context);
        entry.max_error = parse_double(tokens[5], context);
        entry.approximant.degree = entry.degree;
        entry.approximant.a = parse_double(tokens[6], context);
        entry.approximant.b = parse_double(tokens[7], context);

        auto num_tokens = split(next_line(in, context));
        auto den_tokens = split(next_line(in, context));
        if (num_tokens.size() != static_cast<std::size_t>(entry.degree) + 2 ||
            num_tokens[0] != "num" ||
            den_tokens.size() != static_cast<std::size_t>(entry.degree) + 2 ||
            den_tokens[0] != "den") {
            throw IoError(context + ": malformed coefficient records");
        }
        for (int c = 0; c <= entry.degree; ++c) {
            entry.approximant.num_cheb.push_back(parse_double(num_tokens[c + 1], context));
            entry.approximant.den_cheb.push_back(parse_double(den_tokens[c + 1], context));
        }
        num::fill_monomial_forms(entry.approximant);
        table.entries.push_back(std::move(entry));
    }
    if (next_line(in, context) != "end") throw IoError(context + ": missing end marker");
    return table;
}

iv::IvTable load_iv_table_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open iv-table file '" + path + "'");
    return load_iv_table(in);
}

} // namespace rapt::io
