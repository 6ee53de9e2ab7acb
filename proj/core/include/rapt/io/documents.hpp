#pragma once

#include <iosfwd>
#include <string>

#include "rapt/io/config.hpp"
#include "rapt/iv/table.hpp"
#include "rapt/pricer/cache.hpp"

namespace rapt::io {

/// Versioned structured-text persistence. Reals are written with full
/// precision so a save/load round trip is bit-exact; derived data
/// (kernel weights, monomial forms) is recomputed on load through the
/// same code paths as a fresh build.

void save_cache(const pricer::PriceCache& cache, std::uint64_t build_config_hash,
                std::ostream& out);
void save_cache_file(const pricer::PriceCache& cache, std::uint64_t build_config_hash,
                     const std::string& path);
pricer::PriceCache load_cache(std::istream& in);
pricer::PriceCache load_cache_file(const std::string& path);

void save_iv_table(const iv::IvTable& table, std::uint64_t build_config_hash, std::ostream& out);
void save_iv_table_file(const iv::IvTable& table, std::uint64_t build_config_hash,
                        const std::string& path);
iv::IvTable load_iv_table(std::istream& in);
iv::IvTable load_iv_table_file(const std::string& path);

} // namespace rapt::io
