#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gctop/canonical.hpp"
#include "gctop/enumerate.hpp"
#include "gctop/rank.hpp"
#include "gctop/sparse_matrix.hpp"

namespace gctop {

/// Basis element of the graph (co)chain group in degree = number of edges.
/// `edge_order[i]` is the edge id in position i of the reference ordering;
/// the orientation is that ordering up to even permutations.
struct OrientedGenerator {
  StableGraph graph;  // canonical representative
  std::vector<int> edge_order;

  int degree() const { return graph.num_edges(); }

  // Reference ordering = canonical edge order.
  static OrientedGenerator canonical(StableGraph g);
};

struct SignedTerm {
  OrientedGenerator target;
  int sign = 1;
};

/// Contract the edge at `position` of the reference ordering. Empty when the
/// term vanishes: a loop contraction in CV mode, or a non-orientable result.
/// The returned target carries the canonical reference ordering.
std::optional<SignedTerm> boundary_with_sign(const OrientedGenerator& gen,
                                             int position, Mode mode);

struct ComplexOptions {
  Parallelism parallel;
  std::size_t max_classes = 2'000'000;
  std::optional<std::filesystem::path> cache_dir;
  // Nonzero: each generator uses a seeded shuffle of its canonical edge order
  // as reference ordering. Homology must not depend on this.
  std::uint64_t ordering_seed = 0;
  CacheWarning warn;
};

/// Oriented generators of one degree, in enumeration order.
class GeneratorBasis {
 public:
  GeneratorBasis(int genus, int legs, int degree, Mode mode,
                 const ComplexOptions& options);
  // From an already enumerated level; non-orientable graphs are dropped.
  GeneratorBasis(int genus, int legs, int degree, Mode mode, std::vector<StableGraph> graphs,
                 const ComplexOptions& options);

  int genus() const { return genus_; }
  int legs() const { return legs_; }
  int degree() const { return degree_; }
  Mode mode() const { return mode_; }
  std::size_t size() const { return gens_.size(); }
  const OrientedGenerator& operator[](std::size_t i) const { return gens_[i]; }
  const std::vector<OrientedGenerator>& generators() const { return gens_; }
  std::optional<std::size_t> index_of(const GraphBytes& canonical) const;
  const std::string& cache_digest() const { return digest_; }

 private:
  int genus_, legs_, degree_;
  Mode mode_;
  std::vector<OrientedGenerator> gens_;
  std::unordered_map<GraphBytes, std::size_t> index_;
  std::string digest_;

  void add_generators(std::vector<StableGraph> graphs, std::uint64_t ordering_seed);
};

/// Matrix of the contraction differential from `source` (columns, degree p)
/// to `target` (rows, degree p-1). Parallel over columns unless serial.
SparseIntMatrix build_boundary_matrix(const GeneratorBasis& source,
                                      const GeneratorBasis& target,
                                      const Parallelism& parallel = {});

/// Convenience overload that enumerates both bases. Requires
/// 1 <= p <= 3g-3+n.
SparseIntMatrix build_boundary_matrix(int genus, int legs, int degree,
                                      Mode mode,
                                      const ComplexOptions& options = {});

/// All bases and differentials of the complex for (g, n, mode), degrees
/// 0..3g-3+n; boundaries[p] maps degree p to p-1 (boundaries[0] is 0 x gens[0]).
struct GraphComplex {
  int genus = 0;
  int legs = 0;
  Mode mode = Mode::Full;
  std::vector<GeneratorBasis> bases;
  std::vector<SparseIntMatrix> boundaries;
  std::vector<std::string> cache_digests;
};

GraphComplex build_complex(int genus, int legs, Mode mode,
                           const ComplexOptions& options = {});

struct BettiReport {
  int genus = 0;
  int legs = 0;
  Mode mode = Mode::Full;
  std::vector<std::size_t> gens;
  std::vector<int> ranks;  // ranks[p] = rank of d: p -> p-1, ranks[0] = 0
  std::vector<long> betti;
  std::vector<std::uint32_t> primes;
  bool exact = false;  // true if any rank used the exact fallback
  double wall_seconds = 0.0;
  std::vector<std::string> cache_digests;
};

BettiReport betti_numbers(int genus, int legs, Mode mode,
                          const ComplexOptions& options = {},
                          const RankConfig& rank_config = {});

struct ModeComparison {
  BettiReport full;
  BettiReport cv;
  std::vector<bool> equal_per_degree;
  bool all_equal = false;
  bool expected_exception = false;  // (g, n) == (1, 1)
};

ModeComparison compare_modes(int genus, int legs,
                             const ComplexOptions& options = {},
                             const RankConfig& rank_config = {});

}  // namespace gctop
