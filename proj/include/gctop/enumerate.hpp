#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "gctop/stable_graph.hpp"

namespace gctop {

enum class Mode { Full, CV };

std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

struct EnumSpec {
  int genus = 0;
  int legs = 0;
  int edges = 0;
  Mode mode = Mode::Full;
  bool require_orientable = false;

  // Throws InvalidArgument unless 2g-2+n > 0 and 0 <= p <= 3g-3+n.
  void validate() const;
};

// Thread count 1 selects the serial reference path; anything else runs the
// OpenMP path (0 = OpenMP default). Results are identical either way.
struct Parallelism {
  int threads = 1;
  bool serial() const { return threads == 1; }
};

struct EnumOptions {
  Parallelism parallel;
  std::size_t max_classes = 2'000'000;
};

/// One canonical representative per isomorphism class of stable graphs with
/// the given total genus, leg count and edge count, sorted by canonical
/// serialization. Throws ResourceError past options.max_classes.
std::vector<StableGraph> enumerate_graphs(const EnumSpec& spec,
                                          const EnumOptions& options = {});

/// Levels 0..max_edges of the same enumeration (orientability not filtered),
/// computed together: level p is obtained from level p-1 by the inverse of
/// edge contraction.
std::vector<std::vector<StableGraph>> enumerate_levels(int genus, int legs, int max_edges,
                                                       Mode mode,
                                                       const EnumOptions& options = {});

// Cache ------------------------------------------------------------------

using CacheWarning = std::function<void(const std::string&)>;

struct CacheResult {
  std::vector<StableGraph> graphs;
  bool hit = false;
  std::string digest;  // hex SHA-256 cache key
};

/// Cache key: hex SHA-256 over format version, g, n, p, mode and flags.
std::string cache_digest(const EnumSpec& spec);

std::filesystem::path cache_file(const std::filesystem::path& cache_dir,
                                 const EnumSpec& spec);

/// Same list as enumerate_graphs(). Reads cache_dir/gctop/<digest>.graphs
/// when present and valid; otherwise builds and writes it atomically.
/// Corrupt or stale entries are rebuilt and reported through `warn`.
CacheResult cache_get_or_build(const EnumSpec& spec,
                               const std::filesystem::path& cache_dir,
                               const EnumOptions& options = {},
                               const CacheWarning& warn = {});

}  // namespace gctop
