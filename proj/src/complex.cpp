#include "gctop/complex.hpp"

#include <omp.h>

#include <chrono>
#include <exception>
#include <map>
#include <numeric>
#include <random>

#include "gctop/errors.hpp"

namespace gctop {

namespace {

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<int> shuffled_order(int n, std::uint64_t seed) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(order[i], order[j]);
  }
  return order;
}

int top_degree(int genus, int legs) { return 3 * genus - 3 + legs; }

template <typename Body>
void parallel_for(long n, const Parallelism& par, Body&& body) {
  if (par.serial()) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  const int threads = par.threads > 0 ? par.threads : omp_get_max_threads();
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(gctop_complex_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

OrientedGenerator OrientedGenerator::canonical(StableGraph g) {
  std::vector<int> order(g.num_edges());
  std::iota(order.begin(), order.end(), 0);
  return {std::move(g), std::move(order)};
}

std::optional<SignedTerm> boundary_with_sign(const OrientedGenerator& gen,
                                             int position, Mode mode) {
  if (position < 0 || position >= gen.degree()) {
    throw InvalidArgument("edge position " + std::to_string(position) +
                          " out of range for a degree-" +
                          std::to_string(gen.degree()) + " generator");
  }
  const int edge = gen.edge_order[position];
  if (mode == Mode::CV && gen.graph.is_loop(edge)) return std::nullopt;

  const StableGraph contracted = contract_edge(gen.graph, edge);
  CanonicalForm cf = canonical_form(contracted);
  if (!is_orientable(cf.graph)) return std::nullopt;

  const std::vector<int> to_canon =
      edge_permutation(contracted, cf.graph, cf.iso);
  std::vector<int> induced;
  induced.reserve(gen.degree() - 1);
  for (int q = 0; q < gen.degree(); ++q) {
    if (q == position) continue;
    const int original = gen.edge_order[q];
    induced.push_back(to_canon[original < edge ? original : original - 1]);
  }
  const int sign = (position % 2 == 0 ? 1 : -1) * permutation_sign(induced);
  return SignedTerm{OrientedGenerator::canonical(std::move(cf.graph)), sign};
}

GeneratorBasis::GeneratorBasis(int genus, int legs, int degree, Mode mode,
                               const ComplexOptions& options)
    : genus_(genus), legs_(legs), degree_(degree), mode_(mode) {
  EnumSpec spec{genus, legs, degree, mode, true};
  EnumOptions eopts{options.parallel, options.max_classes};
  std::vector<StableGraph> graphs;
  if (options.cache_dir) {
    CacheResult r = cache_get_or_build(spec, *options.cache_dir, eopts, options.warn);
    graphs = std::move(r.graphs);
    digest_ = std::move(r.digest);
  } else {
    graphs = enumerate_graphs(spec, eopts);
    digest_ = gctop::cache_digest(spec);
  }
  add_generators(std::move(graphs), options.ordering_seed);
}

GeneratorBasis::GeneratorBasis(int genus, int legs, int degree, Mode mode,
                               std::vector<StableGraph> graphs,
                               const ComplexOptions& options)
    : genus_(genus), legs_(legs), degree_(degree), mode_(mode) {
  std::erase_if(graphs, [](const StableGraph& g) { return !is_orientable(g); });
  digest_ = gctop::cache_digest({genus, legs, degree, mode, true});
  add_generators(std::move(graphs), options.ordering_seed);
}

void GeneratorBasis::add_generators(std::vector<StableGraph> graphs,
                                    std::uint64_t ordering_seed) {
  gens_.reserve(graphs.size());
  for (auto& g : graphs) {
    GraphBytes key = serialize(g);
    OrientedGenerator gen = OrientedGenerator::canonical(std::move(g));
    if (ordering_seed != 0) {
      gen.edge_order = shuffled_order(gen.degree(), fnv1a(key) ^ ordering_seed);
    }
    index_.emplace(std::move(key), gens_.size());
    gens_.push_back(std::move(gen));
  }
}

std::optional<std::size_t> GeneratorBasis::index_of(const GraphBytes& canonical) const {
  auto it = index_.find(canonical);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SparseIntMatrix build_boundary_matrix(const GeneratorBasis& source,
                                      const GeneratorBasis& target,
                                      const Parallelism& parallel) {
  if (source.degree() != target.degree() + 1 || source.mode() != target.mode() ||
      source.genus() != target.genus() || source.legs() != target.legs()) {
    throw InvalidArgument("bases are not consecutive degrees of one complex");
  }
  std::vector<std::vector<Triplet>> columns(source.size());
  parallel_for(static_cast<long>(source.size()), parallel, [&](long col) {
    std::map<std::size_t, std::int64_t> acc;
    const OrientedGenerator& gen = source[col];
    for (int pos = 0; pos < gen.degree(); ++pos) {
      auto term = boundary_with_sign(gen, pos, source.mode());
      if (!term) continue;
      auto row = target.index_of(serialize(term->target.graph));
      if (!row) {
        throw IntegrityError("contraction produced a graph missing from the "
                             "degree-" + std::to_string(target.degree()) + " basis");
      }
      // Re-express against the row generator's reference ordering.
      const int reorder = permutation_sign(target[*row].edge_order);
      acc[*row] += term->sign * reorder;
    }
    for (const auto& [row, v] : acc) {
      if (v != 0) columns[col].push_back({static_cast<int>(row), static_cast<int>(col), v});
    }
  });
  std::vector<Triplet> entries;
  for (auto& c : columns) entries.insert(entries.end(), c.begin(), c.end());
  return SparseIntMatrix::from_triplets(static_cast<int>(target.size()),
                                        static_cast<int>(source.size()),
                                        std::move(entries));
}

SparseIntMatrix build_boundary_matrix(int genus, int legs, int degree, Mode mode,
                                      const ComplexOptions& options) {
  if (degree < 1 || degree > top_degree(genus, legs)) {
    throw InvalidArgument("boundary degree must lie in [1, 3g-3+n]");
  }
  GeneratorBasis source(genus, legs, degree, mode, options);
  GeneratorBasis target(genus, legs, degree - 1, mode, options);
  return build_boundary_matrix(source, target, options.parallel);
}

GraphComplex build_complex(int genus, int legs, Mode mode,
                           const ComplexOptions& options) {
  if (genus < 0 || legs < 0 || 2 * genus - 2 + legs <= 0) {
    throw InvalidArgument("need g, n >= 0 and 2g-2+n > 0");
  }
  GraphComplex cx;
  cx.genus = genus;
  cx.legs = legs;
  cx.mode = mode;
  const int top = top_degree(genus, legs);
  if (options.cache_dir) {
    for (int p = 0; p <= top; ++p) cx.bases.emplace_back(genus, legs, p, mode, options);
  } else {
    auto levels = enumerate_levels(genus, legs, top, mode,
                                   EnumOptions{options.parallel, options.max_classes});
    for (int p = 0; p <= top; ++p) {
      cx.bases.emplace_back(genus, legs, p, mode, std::move(levels[p]), options);
    }
  }
  for (const auto& b : cx.bases) cx.cache_digests.push_back(b.cache_digest());
  cx.boundaries.emplace_back(0, static_cast<int>(cx.bases[0].size()));
  for (int p = 1; p <= top; ++p) {
    cx.boundaries.push_back(
        build_boundary_matrix(cx.bases[p], cx.bases[p - 1], options.parallel));
  }
  return cx;
}

BettiReport betti_numbers(int genus, int legs, Mode mode,
                          const ComplexOptions& options,
                          const RankConfig& rank_config) {
  rank_config.validate();
  const auto start = std::chrono::steady_clock::now();
  GraphComplex cx = build_complex(genus, legs, mode, options);
  const int top = top_degree(genus, legs);

  BettiReport rep;
  rep.genus = genus;
  rep.legs = legs;
  rep.mode = mode;
  rep.cache_digests = cx.cache_digests;
  rep.primes = {rank_config.primary_prime, rank_config.confirmation_prime};
  rep.gens.resize(top + 1);
  rep.ranks.assign(top + 1, 0);
  std::vector<char> exact(top + 1, 0);
  for (int p = 0; p <= top; ++p) rep.gens[p] = cx.bases[p].size();

  parallel_for(top, options.parallel, [&](long i) {
    const int p = static_cast<int>(i) + 1;
    CertifiedRank r = certified_rank(cx.boundaries[p], rank_config);
    rep.ranks[p] = r.rank;
    exact[p] = r.certainty == RankCertainty::Exact;
  });
  for (char e : exact) rep.exact = rep.exact || e;

  rep.betti.resize(top + 1);
  for (int p = 0; p <= top; ++p) {
    const long next = p < top ? rep.ranks[p + 1] : 0;
    rep.betti[p] = static_cast<long>(rep.gens[p]) - rep.ranks[p] - next;
    if (rep.betti[p] < 0) {
      throw IntegrityError("negative Betti number in degree " + std::to_string(p));
    }
  }
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

ModeComparison compare_modes(int genus, int legs, const ComplexOptions& options,
                             const RankConfig& rank_config) {
  ModeComparison cmp;
  cmp.full = betti_numbers(genus, legs, Mode::Full, options, rank_config);
  cmp.cv = betti_numbers(genus, legs, Mode::CV, options, rank_config);
  cmp.all_equal = true;
  for (std::size_t p = 0; p < cmp.full.betti.size(); ++p) {
    const bool eq = cmp.full.betti[p] == cmp.cv.betti[p];
    cmp.equal_per_degree.push_back(eq);
    cmp.all_equal = cmp.all_equal && eq;
  }
  cmp.expected_exception = genus == 1 && legs == 1;
  return cmp;
}

}  // namespace gctop
