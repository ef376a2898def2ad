#pragma once

#include <optional>
#include <string>

#include "rlab/arith.hpp"

namespace rlab {

// Binary sieve cache. Layout: magic "RLAB1", limit as 8-byte little-endian,
// then mu as signed bytes, r3 and spf as little-endian uint32 arrays, each
// of length limit+1 (index 0 and, for spf, index 1 are the in-memory
// sentinels).
std::string sieve_cache_filename(std::int64_t limit);

void save_tables(const ArithTables& tables, const std::string& path);
std::optional<ArithTables> load_tables(const std::string& path, std::int64_t expected_limit);

// Resolves the cache dir from RESONATOR_LAB_SIEVE_DIR (or an explicit
// override), loading when a matching file exists and building + saving
// otherwise. An empty dir means no caching.
ArithTables tables_with_cache(std::int64_t limit, unsigned threads, const std::string& dir);

}  // namespace rlab
