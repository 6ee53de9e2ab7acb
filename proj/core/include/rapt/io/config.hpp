#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rapt/clocks/models.hpp"
#include "rapt/pricer/pricing.hpp"

namespace rapt::io {

struct GridSpec {
    std::vector<double> strikes;
    std::vector<double> maturities;
};

/// A full run configuration: model, market, pricing grid and engine
/// knobs. Serialized as a flat sectioned key-value text document with
/// full-precision reals so artifacts diff cleanly.
struct RunConfig {
    clocks::ClockModel model = clocks::VgParams{0.2, 0.2, -0.1};
    clocks::MarketParams market;
    GridSpec grid;
    pricer::EngineOptions engine;
    bool use_cache = true;

    void validate() const;
};

/// Named parameter presets case-I .. case-V (the five literature
/// parameter sets) with the standard 41 x 6 pricing grid.
RunConfig preset(const std::string& name);
std::vector<std::string> preset_names();

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& config);
void save_config(const RunConfig& config, const std::string& path);

/// FNV-1a hash of the canonical serialized form.
std::uint64_t config_hash(const RunConfig& config);

/// Full-precision decimal formatting that round-trips doubles exactly.
std::string format_full(double value);

} // namespace rapt::io
