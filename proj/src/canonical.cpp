#include "gctop/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "gctop/errors.hpp"

namespace gctop {

namespace {

void put_u16(GraphBytes& out, int x) {
  if (x < 0 || x > 0xFFFF) throw ValidationError("value does not fit in u16");
  out.push_back(static_cast<char>(x & 0xFF));
  out.push_back(static_cast<char>((x >> 8) & 0xFF));
}

void put_u32(GraphBytes& out, std::uint32_t x) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((x >> (8 * i)) & 0xFF));
}

class ByteReader {
 public:
  explicit ByteReader(std::string_view s) : s_(s) {}
  int u16() {
    need(2);
    int x = static_cast<unsigned char>(s_[pos_]) |
            (static_cast<unsigned char>(s_[pos_ + 1]) << 8);
    pos_ += 2;
    return x;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t x = 0;
    for (int i = 0; i < 4; ++i) {
      x |= static_cast<std::uint32_t>(static_cast<unsigned char>(s_[pos_ + i])) << (8 * i);
    }
    pos_ += 4;
    return x;
  }
  bool done() const { return pos_ == s_.size(); }

 private:
  void need(std::size_t k) const {
    if (pos_ + k > s_.size()) throw ValidationError("truncated graph bytes");
  }
  std::string_view s_;
  std::size_t pos_ = 0;
};

// Vertex-level view used by the search: multiplicity matrix and invariants.
struct VertexData {
  int n = 0;
  std::vector<int> mult;  // n*n, symmetric; diagonal = number of loops
  std::vector<int> genus;
  std::vector<int> leg_pos_by_label;  // vertex of leg label i+1
  std::vector<std::vector<int>> legs_at;  // sorted labels per vertex

  int m(int a, int b) const { return mult[a * n + b]; }
};

VertexData vertex_data(const StableGraph& g) {
  VertexData d;
  d.n = g.num_vertices();
  d.mult.assign(d.n * d.n, 0);
  d.genus = g.genera();
  d.legs_at.resize(d.n);
  d.leg_pos_by_label.resize(g.num_legs());
  for (int k = 0; k < g.num_edges(); ++k) {
    auto [a, b] = g.endpoints(k);
    d.mult[a * d.n + b] += 1;
    if (a != b) d.mult[b * d.n + a] += 1;
  }
  for (int h = 0; h < g.num_half_edges(); ++h) {
    if (g.is_leg(h)) {
      d.legs_at[g.vertex_of(h)].push_back(g.leg_label(h));
      d.leg_pos_by_label[g.leg_label(h) - 1] = g.vertex_of(h);
    }
  }
  for (auto& l : d.legs_at) std::sort(l.begin(), l.end());
  return d;
}

// Assign dense color indices 0..k-1 to vertices ordered by key.
template <typename Key>
int recolor(const std::vector<Key>& keys, std::vector<int>& color) {
  const int n = static_cast<int>(keys.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return keys[a] < keys[b]; });
  int c = -1;
  for (int i = 0; i < n; ++i) {
    if (i == 0 || keys[idx[i]] != keys[idx[i - 1]]) ++c;
    color[idx[i]] = c;
  }
  return c + 1;
}

// Refine to the coarsest equitable partition finer than `color`.
int refine(const VertexData& d, std::vector<int>& color) {
  int classes = 1 + *std::max_element(color.begin(), color.end());
  while (true) {
    std::vector<std::vector<int>> sig(d.n);
    for (int v = 0; v < d.n; ++v) {
      sig[v].assign(classes + 1, 0);
      sig[v][0] = color[v];
      for (int w = 0; w < d.n; ++w) sig[v][1 + color[w]] += d.m(v, w);
    }
    const int next = recolor(sig, color);
    if (next == classes) return classes;
    classes = next;
  }
}

std::vector<int> initial_colors(const VertexData& d) {
  using Key = std::tuple<int, int, int, std::vector<int>>;
  std::vector<Key> keys(d.n);
  for (int v = 0; v < d.n; ++v) {
    int val = static_cast<int>(d.legs_at[v].size());
    for (int w = 0; w < d.n; ++w) val += (v == w ? 2 : 1) * d.m(v, w);
    keys[v] = {d.genus[v], val, d.m(v, v), d.legs_at[v]};
  }
  std::vector<int> color(d.n);
  recolor(keys, color);
  return color;
}

// Certificate of the relabelling that puts vertex order[i] at position i.
std::vector<int> certificate(const VertexData& d, const std::vector<int>& order,
                             const std::vector<int>& pos) {
  std::vector<int> cert;
  cert.reserve(d.n + d.n * (d.n + 1) / 2 + d.leg_pos_by_label.size());
  for (int i = 0; i < d.n; ++i) cert.push_back(d.genus[order[i]]);
  for (int v : d.leg_pos_by_label) cert.push_back(pos[v]);
  for (int i = 0; i < d.n; ++i) {
    for (int j = i; j < d.n; ++j) cert.push_back(d.m(order[i], order[j]));
  }
  return cert;
}

struct SearchResult {
  std::vector<int> best_cert;
  std::vector<std::vector<int>> best_orders;  // every leaf achieving best_cert
};

class Search {
 public:
  Search(const VertexData& d, const SearchLimits& limits)
      : d_(d), limits_(limits) {}

  SearchResult run() {
    std::vector<int> color = initial_colors(d_);
    refine(d_, color);
    descend(color);
    return std::move(result_);
  }

 private:
  void descend(const std::vector<int>& color) {
    const int n = d_.n;
    std::vector<int> size(n, 0);
    for (int c : color) ++size[c];
    int target = -1;
    for (int c = 0; c < n; ++c) {
      if (size[c] > 1) {
        target = c;
        break;
      }
    }
    if (target < 0) {
      leaf(color);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (color[v] != target) continue;
      std::vector<int> next(n);
      for (int w = 0; w < n; ++w) {
        next[w] = 2 * color[w] + ((color[w] == target && w != v) ? 1 : 0);
      }
      refine(d_, next);
      descend(next);
    }
  }

  void leaf(const std::vector<int>& color) {
    if (++leaves_ > limits_.max_leaves) {
      throw ResourceError("canonical search exceeded leaf cap");
    }
    std::vector<int> order(d_.n);
    for (int v = 0; v < d_.n; ++v) order[color[v]] = v;
    std::vector<int> cert = certificate(d_, order, color);
    if (result_.best_orders.empty() || cert < result_.best_cert) {
      result_.best_cert = std::move(cert);
      result_.best_orders.assign(1, std::move(order));
    } else if (cert == result_.best_cert) {
      result_.best_orders.push_back(std::move(order));
    }
  }

  const VertexData& d_;
  SearchLimits limits_;
  std::size_t leaves_ = 0;
  SearchResult result_;
};

SearchResult search(const StableGraph& g, const SearchLimits& limits) {
  if (g.num_vertices() == 0) throw ValidationError("graph has no vertices");
  VertexData d = vertex_data(g);
  return Search(d, limits).run();
}

CanonicalForm build_canonical(const StableGraph& g,
                              const std::vector<int>& order) {
  const int nv = g.num_vertices();
  std::vector<int> pos(nv);
  for (int i = 0; i < nv; ++i) pos[order[i]] = i;

  struct Slot {
    int lo, hi, edge, lo_half, hi_half;
  };
  std::vector<Slot> slots;
  slots.reserve(g.num_edges());
  for (int k = 0; k < g.num_edges(); ++k) {
    const auto [h1, h2] = g.edges()[k];
    int a = pos[g.vertex_of(h1)];
    int b = pos[g.vertex_of(h2)];
    if (a <= b) {
      slots.push_back({a, b, k, h1, h2});
    } else {
      slots.push_back({b, a, k, h2, h1});
    }
  }
  std::sort(slots.begin(), slots.end(), [](const Slot& x, const Slot& y) {
    return std::tie(x.lo, x.hi, x.edge) < std::tie(y.lo, y.hi, y.edge);
  });

  std::vector<int> genus(nv);
  for (int i = 0; i < nv; ++i) genus[i] = g.genus(order[i]);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(slots.size());
  Isomorphism iso;
  iso.half_edge_map.assign(g.num_half_edges(), -1);
  iso.vertex_map = pos;
  for (std::size_t j = 0; j < slots.size(); ++j) {
    edges.emplace_back(slots[j].lo, slots[j].hi);
    iso.half_edge_map[slots[j].lo_half] = static_cast<int>(2 * j);
    iso.half_edge_map[slots[j].hi_half] = static_cast<int>(2 * j + 1);
  }
  const int ne = g.num_edges();
  std::vector<LegSpec> legs(g.num_legs());
  for (int h = 0; h < g.num_half_edges(); ++h) {
    if (!g.is_leg(h)) continue;
    const int label = g.leg_label(h);
    legs[label - 1] = {pos[g.vertex_of(h)], label};
    iso.half_edge_map[h] = 2 * ne + label - 1;
  }
  return {StableGraph::from_edges(std::move(genus), edges, legs),
          std::move(iso)};
}

// Vertex automorphisms as image vectors, from the set of best leaves.
std::vector<std::vector<int>> vertex_auts_from(const SearchResult& r, int nv) {
  const auto& base = r.best_orders.front();
  std::vector<std::vector<int>> out;
  out.reserve(r.best_orders.size());
  for (const auto& order : r.best_orders) {
    std::vector<int> phi(nv);
    for (int i = 0; i < nv; ++i) phi[order[i]] = base[i];
    out.push_back(std::move(phi));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Edges grouped by unordered endpoint pair.
std::map<std::pair<int, int>, std::vector<int>> edge_classes(
    const StableGraph& g) {
  std::map<std::pair<int, int>, std::vector<int>> classes;
  for (int k = 0; k < g.num_edges(); ++k) {
    auto [a, b] = g.endpoints(k);
    classes[{std::min(a, b), std::max(a, b)}].push_back(k);
  }
  return classes;
}

std::size_t factorial_capped(int m, std::size_t cap) {
  std::size_t f = 1;
  for (int i = 2; i <= m; ++i) {
    f *= static_cast<std::size_t>(i);
    if (f > cap) return cap + 1;
  }
  return f;
}

std::size_t edge_fibre_size(const StableGraph& g, std::size_t cap) {
  std::size_t fibre = 1;
  for (const auto& [key, ids] : edge_classes(g)) {
    fibre *= factorial_capped(static_cast<int>(ids.size()), cap);
    if (key.first == key.second) {
      for (std::size_t i = 0; i < ids.size(); ++i) fibre *= 2;
    }
    if (fibre > cap) return cap + 1;
  }
  return fibre;
}

}  // namespace

GraphBytes serialize(const StableGraph& g) {
  GraphBytes out;
  put_u32(out, kGraphFormatVersion);
  put_u16(out, g.num_vertices());
  put_u16(out, g.num_edges());
  put_u16(out, g.num_legs());
  for (int v = 0; v < g.num_vertices(); ++v) put_u16(out, g.genus(v));
  for (int k = 0; k < g.num_edges(); ++k) {
    auto [a, b] = g.endpoints(k);
    put_u16(out, a);
    put_u16(out, b);
  }
  for (int label = 1; label <= g.num_legs(); ++label) {
    put_u16(out, g.leg_vertex(label));
  }
  return out;
}

StableGraph deserialize(std::string_view bytes) {
  ByteReader r(bytes);
  const std::uint32_t version = r.u32();
  if (version != kGraphFormatVersion) {
    throw ValidationError("unsupported graph format version " +
                          std::to_string(version));
  }
  const int nv = r.u16();
  const int ne = r.u16();
  const int nl = r.u16();
  std::vector<int> genus(nv);
  for (auto& x : genus) x = r.u16();
  std::vector<std::pair<int, int>> edges(ne);
  for (auto& e : edges) {
    e.first = r.u16();
    e.second = r.u16();
  }
  std::vector<LegSpec> legs(nl);
  for (int i = 0; i < nl; ++i) legs[i] = {r.u16(), i + 1};
  if (!r.done()) throw ValidationError("trailing bytes after graph");
  return StableGraph::from_edges(std::move(genus), edges, legs);
}

CanonicalForm canonical_form(const StableGraph& g, const SearchLimits& limits) {
  SearchResult r = search(g, limits);
  return build_canonical(g, r.best_orders.front());
}

GraphBytes canonical_bytes(const StableGraph& g) {
  return serialize(canonical_form(g).graph);
}

bool are_isomorphic(const StableGraph& a, const StableGraph& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges() ||
      a.num_legs() != b.num_legs()) {
    return false;
  }
  return canonical_bytes(a) == canonical_bytes(b);
}

std::vector<std::vector<int>> vertex_automorphisms(const StableGraph& g,
                                                   const SearchLimits& limits) {
  return vertex_auts_from(search(g, limits), g.num_vertices());
}

std::size_t automorphism_count(const StableGraph& g,
                               const SearchLimits& limits) {
  const std::size_t cap = limits.max_automorphisms;
  const std::size_t fibre = edge_fibre_size(g, cap);
  const std::size_t vert = vertex_automorphisms(g, limits).size();
  if (fibre > cap || vert * fibre > cap || vert > cap) {
    throw ResourceError("automorphism group exceeds cap of " +
                        std::to_string(cap));
  }
  return vert * fibre;
}

std::vector<Isomorphism> automorphisms(const StableGraph& g,
                                       const SearchLimits& limits) {
  automorphism_count(g, limits);  // enforces the cap
  const auto vauts = vertex_automorphisms(g, limits);
  const auto classes = edge_classes(g);

  std::vector<int> leg_half_by_label(g.num_legs());
  for (int h = 0; h < g.num_half_edges(); ++h) {
    if (g.is_leg(h)) leg_half_by_label[g.leg_label(h) - 1] = h;
  }

  std::vector<Isomorphism> out;
  for (const auto& phi : vauts) {
    // For every source class pick its target class; then enumerate the
    // product of edge bijections and loop flips via an odometer.
    struct Choice {
      std::vector<int> src, dst;
      bool loop;
    };
    std::vector<Choice> choices;
    for (const auto& [key, ids] : classes) {
      int a = phi[key.first], b = phi[key.second];
      auto it = classes.find({std::min(a, b), std::max(a, b)});
      choices.push_back({ids, it->second, key.first == key.second});
    }
    std::vector<std::vector<int>> perms;  // current bijection per class
    std::vector<unsigned> flips;          // loop flip bitmask per class
    for (const auto& c : choices) {
      std::vector<int> p(c.src.size());
      std::iota(p.begin(), p.end(), 0);
      perms.push_back(std::move(p));
      flips.push_back(0);
    }
    while (true) {
      Isomorphism iso;
      iso.vertex_map = phi;
      iso.half_edge_map.assign(g.num_half_edges(), -1);
      for (std::size_t c = 0; c < choices.size(); ++c) {
        for (std::size_t i = 0; i < choices[c].src.size(); ++i) {
          const auto s = g.edges()[choices[c].src[i]];
          const auto t = g.edges()[choices[c].dst[perms[c][i]]];
          if (choices[c].loop) {
            bool flip = (flips[c] >> i) & 1U;
            iso.half_edge_map[s.first] = flip ? t.second : t.first;
            iso.half_edge_map[s.second] = flip ? t.first : t.second;
          } else if (phi[g.vertex_of(s.first)] == g.vertex_of(t.first)) {
            iso.half_edge_map[s.first] = t.first;
            iso.half_edge_map[s.second] = t.second;
          } else {
            iso.half_edge_map[s.first] = t.second;
            iso.half_edge_map[s.second] = t.first;
          }
        }
      }
      for (int label = 1; label <= g.num_legs(); ++label) {
        const int h = leg_half_by_label[label - 1];
        iso.half_edge_map[h] = h;
      }
      out.push_back(std::move(iso));

      // Advance the odometer: flips first, then permutations.
      std::size_t c = 0;
      for (; c < choices.size(); ++c) {
        if (choices[c].loop) {
          const unsigned limit = 1U << choices[c].src.size();
          if (++flips[c] < limit) break;
          flips[c] = 0;
        }
        if (std::next_permutation(perms[c].begin(), perms[c].end())) break;
        // next_permutation wrapped around to the identity.
      }
      if (c == choices.size()) break;
    }
  }
  return out;
}

bool is_orientable(const StableGraph& g) {
  for (const auto& [key, ids] : edge_classes(g)) {
    if (ids.size() > 1) return false;  // swapping two parallel edges is odd
  }
  std::map<std::pair<int, int>, int> edge_by_pair;
  for (int k = 0; k < g.num_edges(); ++k) {
    auto [a, b] = g.endpoints(k);
    edge_by_pair[{std::min(a, b), std::max(a, b)}] = k;
  }
  for (const auto& phi : vertex_automorphisms(g)) {
    std::vector<int> perm(g.num_edges());
    for (int k = 0; k < g.num_edges(); ++k) {
      auto [a, b] = g.endpoints(k);
      int x = phi[a], y = phi[b];
      perm[k] = edge_by_pair.at({std::min(x, y), std::max(x, y)});
    }
    if (permutation_sign(perm) < 0) return false;
  }
  return true;
}

}  // namespace gctop
