#pragma once

// Text design files and the on-disk design cache.
//
//   UNITAL v1
//   p=3 m=2 q=9 f=square theta_index=5 modulus=2,0,0,1,1
//   points=730 blocks=5913
//   <one sorted block per line>

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

#include "unital/unital.hpp"

namespace unital {

void write_design(std::ostream& out, const UnitalDesign& U);

/// Throws std::runtime_error on malformed input.
UnitalDesign read_design(std::istream& in);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// cache_dir / "p{p}m{m}f{fid}t{theta_index}"
std::filesystem::path cache_entry_dir(const std::filesystem::path& cache_dir, const DesignInfo& info,
                                      const std::string& f_id);

struct CachedDesign {
  UnitalDesign design;
  bool loaded = false;   // served from the cache
  bool rebuilt = false;  // a cache file existed but failed validation
};

/// Loads the cached design when its header matches `expected` and it passes a
/// spot check of `spot_pairs` point pairs; otherwise builds, writes and returns it.
CachedDesign load_or_build(const std::filesystem::path& cache_dir, const DesignInfo& expected,
                           const std::string& f_id, const std::function<UnitalDesign()>& build,
                           std::size_t spot_pairs = 2000);

}  // namespace unital
