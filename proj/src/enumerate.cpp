#include "gctop/enumerate.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <set>

#include "gctop/canonical.hpp"
#include "gctop/errors.hpp"

namespace gctop {

std::string to_string(Mode m) { return m == Mode::Full ? "full" : "cv"; }

Mode parse_mode(const std::string& s) {
  if (s == "full" || s == "FULL") return Mode::Full;
  if (s == "cv" || s == "CV") return Mode::CV;
  throw InvalidArgument("unknown mode '" + s + "' (expected full or cv)");
}

void EnumSpec::validate() const {
  if (genus < 0 || legs < 0) {
    throw InvalidArgument("genus and leg count must be non-negative");
  }
  if (2 * genus - 2 + legs <= 0) {
    throw InvalidArgument("need 2g-2+n > 0 for stable graphs");
  }
  if (edges < 0 || edges > 3 * genus - 3 + legs) {
    throw InvalidArgument("edge count must lie in [0, 3g-3+n]");
  }
}

namespace {

void add_half_edge(std::vector<int>& vertex_of, std::vector<int>& inv,
                   std::vector<int>& label, int v) {
  vertex_of.push_back(v);
  inv.push_back(static_cast<int>(inv.size()));
  label.push_back(0);
}

// Every graph with one more edge that contracts back onto `h`: a loop at a
// positive-genus vertex (Full mode only), or a vertex split into two stable
// halves joined by a new edge. Results are canonical bytes, possibly repeated.
void expand(const StableGraph& h, Mode mode, std::vector<GraphBytes>& out) {
  const int nv = h.num_vertices();
  const int nh = h.num_half_edges();
  std::vector<int> genus = h.genera();
  std::vector<int> vertex_of(nh), inv(nh), label(nh);
  for (int x = 0; x < nh; ++x) {
    vertex_of[x] = h.vertex_of(x);
    inv[x] = h.involution(x);
    label[x] = h.leg_label(x);
  }
  auto emit = [&](std::vector<int> gen, std::vector<int> vo, std::vector<int> in,
                  std::vector<int> lab) {
    StableGraph g(std::move(gen), std::move(vo), std::move(in), std::move(lab));
    out.push_back(canonical_bytes(g));
  };

  for (int v = 0; v < nv; ++v) {
    if (mode == Mode::Full && genus[v] > 0) {
      auto gen = genus;
      auto vo = vertex_of, in = inv, lab = label;
      --gen[v];
      add_half_edge(vo, in, lab, v);
      add_half_edge(vo, in, lab, v);
      in[nh] = nh + 1;
      in[nh + 1] = nh;
      emit(std::move(gen), std::move(vo), std::move(in), std::move(lab));
    }

    std::vector<int> at;
    for (int x = 0; x < nh; ++x) {
      if (vertex_of[x] == v) at.push_back(x);
    }
    const int k = static_cast<int>(at.size());
    const int max_g1 = mode == Mode::CV ? 0 : genus[v];
    // at[0] stays on v; the complementary split is the same graph. A bare
    // vertex has only the empty split.
    for (std::uint64_t mask = k ? 1 : 0; mask < (std::uint64_t{1} << k) || mask == 0;
         mask += 2) {
      const int stay = std::popcount(mask);
      const int move = k - stay;
      for (int g1 = 0; g1 <= max_g1; ++g1) {
        const int g2 = genus[v] - g1;
        if (2 * g1 + stay < 2 || 2 * g2 + move < 2) continue;
        auto gen = genus;
        auto vo = vertex_of, in = inv, lab = label;
        gen[v] = g1;
        gen.push_back(g2);
        for (int i = 0; i < k; ++i) {
          if (!(mask >> i & 1)) vo[at[i]] = nv;
        }
        add_half_edge(vo, in, lab, v);
        add_half_edge(vo, in, lab, nv);
        in[nh] = nh + 1;
        in[nh + 1] = nh;
        emit(std::move(gen), std::move(vo), std::move(in), std::move(lab));
      }
    }
  }
}

std::vector<GraphBytes> next_level(const std::vector<GraphBytes>& prev, Mode mode,
                                   const Parallelism& par) {
  const long n = static_cast<long>(prev.size());
  std::vector<std::vector<GraphBytes>> found(n);
  auto body = [&](long i) {
    expand(deserialize(prev[i]), mode, found[i]);
    std::sort(found[i].begin(), found[i].end());
    found[i].erase(std::unique(found[i].begin(), found[i].end()), found[i].end());
  };
  if (par.serial()) {
    for (long i = 0; i < n; ++i) body(i);
  } else {
    const int threads = par.threads > 0 ? par.threads : omp_get_max_threads();
    // Exceptions may not escape an OpenMP region; capture the first one.
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
#pragma omp critical(gctop_enum_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }
  std::set<GraphBytes> merged;
  for (auto& f : found) merged.insert(std::make_move_iterator(f.begin()),
                                      std::make_move_iterator(f.end()));
  return {std::make_move_iterator(merged.begin()), std::make_move_iterator(merged.end())};
}

StableGraph rose(int loops, int genus, int legs) {
  std::vector<std::pair<int, int>> edges(loops, {0, 0});
  std::vector<LegSpec> leg_specs;
  for (int i = 1; i <= legs; ++i) leg_specs.push_back({0, i});
  return StableGraph::from_edges({genus}, edges, leg_specs);
}

void check_cap(std::size_t size, const EnumOptions& options) {
  if (size > options.max_classes) {
    throw ResourceError("enumeration exceeded the cap of " +
                        std::to_string(options.max_classes) + " classes");
  }
}

}  // namespace

std::vector<std::vector<StableGraph>> enumerate_levels(int genus, int legs, int max_edges,
                                                       Mode mode,
                                                       const EnumOptions& options) {
  EnumSpec{genus, legs, max_edges, mode, false}.validate();
  // Every graph with p >= 1 edges contracts onto one with p - 1, so level p is
  // the expansion of level p - 1. In CV mode the all-loop rose is the one
  // graph with no non-loop edge to contract, so it is added by hand.
  std::vector<GraphBytes> level;
  if (mode == Mode::Full || genus == 0) level.push_back(canonical_bytes(rose(0, genus, legs)));
  std::vector<std::vector<StableGraph>> out;
  for (int p = 0; p <= max_edges; ++p) {
    if (p > 0) {
      level = next_level(level, mode, options.parallel);
      if (mode == Mode::CV && p == genus) {
        GraphBytes r = canonical_bytes(rose(genus, 0, legs));
        level.insert(std::lower_bound(level.begin(), level.end(), r), std::move(r));
      }
    }
    check_cap(level.size(), options);
    std::vector<StableGraph> graphs;
    graphs.reserve(level.size());
    for (const auto& b : level) graphs.push_back(deserialize(b));
    out.push_back(std::move(graphs));
  }
  return out;
}

std::vector<StableGraph> enumerate_graphs(const EnumSpec& spec,
                                          const EnumOptions& options) {
  spec.validate();
  std::vector<StableGraph> graphs =
      std::move(enumerate_levels(spec.genus, spec.legs, spec.edges, spec.mode, options).back());
  if (spec.require_orientable) {
    std::erase_if(graphs, [](const StableGraph& g) { return !is_orientable(g); });
  }
  return graphs;
}

}  // namespace gctop
