#include "gctop/stable_graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "gctop/errors.hpp"

namespace gctop {

StableGraph::StableGraph(std::vector<int> genus, std::vector<int> vertex_of,
                         std::vector<int> involution,
                         std::vector<int> leg_label)
    : genus_(std::move(genus)),
      vertex_of_(std::move(vertex_of)),
      involution_(std::move(involution)),
      leg_label_(std::move(leg_label)) {
  const int nh = static_cast<int>(vertex_of_.size());
  const int nv = static_cast<int>(genus_.size());
  if (static_cast<int>(involution_.size()) != nh ||
      static_cast<int>(leg_label_.size()) != nh) {
    throw ValidationError("half-edge arrays have inconsistent sizes");
  }
  for (int g : genus_) {
    if (g < 0) throw ValidationError("negative vertex genus");
  }
  for (int h = 0; h < nh; ++h) {
    if (vertex_of_[h] < 0 || vertex_of_[h] >= nv) {
      throw ValidationError("half-edge " + std::to_string(h) +
                            " attached to a nonexistent vertex");
    }
    const int j = involution_[h];
    if (j < 0 || j >= nh || involution_[j] != h) {
      throw ValidationError("involution is not self-inverse at half-edge " +
                            std::to_string(h));
    }
  }
  std::vector<int> seen;
  for (int h = 0; h < nh; ++h) {
    if (involution_[h] == h) {
      seen.push_back(leg_label_[h]);
    } else if (leg_label_[h] != 0) {
      throw ValidationError("edge half-edge carries a leg label");
    } else if (h < involution_[h]) {
      edges_.push_back({h, involution_[h]});
    }
  }
  num_legs_ = static_cast<int>(seen.size());
  std::sort(seen.begin(), seen.end());
  for (int i = 0; i < num_legs_; ++i) {
    if (seen[i] != i + 1) {
      throw ValidationError("leg labels must be exactly 1..n");
    }
  }
}

StableGraph StableGraph::from_edges(std::vector<int> genus,
                                    std::span<const std::pair<int, int>> edges,
                                    std::span<const LegSpec> legs) {
  const int ne = static_cast<int>(edges.size());
  const int nh = 2 * ne + static_cast<int>(legs.size());
  std::vector<int> vertex_of(nh), involution(nh), label(nh, 0);
  for (int k = 0; k < ne; ++k) {
    vertex_of[2 * k] = edges[k].first;
    vertex_of[2 * k + 1] = edges[k].second;
    involution[2 * k] = 2 * k + 1;
    involution[2 * k + 1] = 2 * k;
  }
  for (std::size_t i = 0; i < legs.size(); ++i) {
    const int h = 2 * ne + static_cast<int>(i);
    vertex_of[h] = legs[i].vertex;
    involution[h] = h;
    label[h] = legs[i].label;
  }
  return StableGraph(std::move(genus), std::move(vertex_of),
                     std::move(involution), std::move(label));
}

std::pair<int, int> StableGraph::endpoints(int edge) const {
  const auto& e = edges_.at(edge);
  return {vertex_of_[e.first], vertex_of_[e.second]};
}

bool StableGraph::is_loop(int edge) const {
  auto [a, b] = endpoints(edge);
  return a == b;
}

int StableGraph::valence(int v) const {
  return static_cast<int>(std::count(vertex_of_.begin(), vertex_of_.end(), v));
}

int StableGraph::leg_vertex(int label) const {
  for (int h = 0; h < num_half_edges(); ++h) {
    if (leg_label_[h] == label && involution_[h] == h) return vertex_of_[h];
  }
  throw InvalidArgument("no leg with label " + std::to_string(label));
}

bool StableGraph::is_connected() const {
  const int nv = num_vertices();
  if (nv == 0) return false;
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = nv;
  for (const auto& e : edges_) {
    int a = find(vertex_of_[e.first]);
    int b = find(vertex_of_[e.second]);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

int total_genus(const StableGraph& g) {
  if (!g.is_connected()) {
    throw ValidationError("total genus requested for a disconnected graph");
  }
  int sum = 0;
  for (int x : g.genera()) sum += x;
  return sum + g.num_edges() - g.num_vertices() + 1;
}

StableGraph contract_edge(const StableGraph& g, int edge) {
  if (edge < 0 || edge >= g.num_edges()) {
    throw InvalidArgument("contract_edge: " + std::to_string(edge) +
                          " is not an edge id");
  }
  const auto [h1, h2] = g.edges()[edge];
  const int u = g.vertex_of(h1);
  const int v = g.vertex_of(h2);

  std::vector<int> genus = g.genera();
  std::vector<int> vertex_rename(g.num_vertices());
  std::iota(vertex_rename.begin(), vertex_rename.end(), 0);
  if (u == v) {
    genus[u] += 1;
  } else {
    const int keep = std::min(u, v);
    const int drop = std::max(u, v);
    genus[keep] += genus[drop];
    genus.erase(genus.begin() + drop);
    for (int w = 0; w < g.num_vertices(); ++w) {
      if (w == drop) {
        vertex_rename[w] = keep;
      } else if (w > drop) {
        vertex_rename[w] = w - 1;
      }
    }
  }

  std::vector<int> half_rename(g.num_half_edges(), -1);
  int next = 0;
  for (int h = 0; h < g.num_half_edges(); ++h) {
    if (h != h1 && h != h2) half_rename[h] = next++;
  }
  std::vector<int> vertex_of(next), involution(next), label(next);
  for (int h = 0; h < g.num_half_edges(); ++h) {
    const int nh = half_rename[h];
    if (nh < 0) continue;
    vertex_of[nh] = vertex_rename[g.vertex_of(h)];
    involution[nh] = half_rename[g.involution(h)];
    label[nh] = g.leg_label(h);
  }
  return StableGraph(std::move(genus), std::move(vertex_of),
                     std::move(involution), std::move(label));
}

std::vector<StableGraph> cut_all_edges(const StableGraph& g) {
  std::vector<StableGraph> pieces;
  pieces.reserve(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) {
    std::vector<LegSpec> legs;
    for (int h = 0; h < g.num_half_edges(); ++h) {
      if (g.vertex_of(h) == v) {
        legs.push_back({0, static_cast<int>(legs.size()) + 1});
      }
    }
    pieces.push_back(StableGraph::from_edges({g.genus(v)}, {}, legs));
  }
  return pieces;
}

namespace {
bool check_all_vertices(const StableGraph& g, int strict_bound) {
  std::vector<int> val(g.num_vertices(), 0);
  for (int h = 0; h < g.num_half_edges(); ++h) ++val[g.vertex_of(h)];
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (2 * g.genus(v) - 2 + val[v] < strict_bound) return false;
  }
  return true;
}
}  // namespace

bool is_stable(const StableGraph& g) { return check_all_vertices(g, 1); }

bool is_semistable(const StableGraph& g) { return check_all_vertices(g, 0); }

bool is_isomorphism(const StableGraph& a, const StableGraph& b,
                    const Isomorphism& iso) {
  const int nh = a.num_half_edges();
  const int nv = a.num_vertices();
  if (nh != b.num_half_edges() || nv != b.num_vertices()) return false;
  if (static_cast<int>(iso.half_edge_map.size()) != nh ||
      static_cast<int>(iso.vertex_map.size()) != nv) {
    return false;
  }
  std::vector<char> hit_h(nh, 0), hit_v(nv, 0);
  for (int h = 0; h < nh; ++h) {
    const int t = iso.half_edge_map[h];
    if (t < 0 || t >= nh || hit_h[t]) return false;
    hit_h[t] = 1;
  }
  for (int v = 0; v < nv; ++v) {
    const int t = iso.vertex_map[v];
    if (t < 0 || t >= nv || hit_v[t]) return false;
    hit_v[t] = 1;
    if (a.genus(v) != b.genus(t)) return false;
  }
  for (int h = 0; h < nh; ++h) {
    const int t = iso.half_edge_map[h];
    if (iso.half_edge_map[a.involution(h)] != b.involution(t)) return false;
    if (iso.vertex_map[a.vertex_of(h)] != b.vertex_of(t)) return false;
    if (a.leg_label(h) != b.leg_label(t)) return false;
  }
  return true;
}

std::vector<int> edge_permutation(const StableGraph& source,
                                  const StableGraph& target,
                                  const Isomorphism& iso) {
  std::vector<int> edge_of_half(target.num_half_edges(), -1);
  for (int k = 0; k < target.num_edges(); ++k) {
    edge_of_half[target.edges()[k].first] = k;
    edge_of_half[target.edges()[k].second] = k;
  }
  std::vector<int> perm(source.num_edges());
  for (int k = 0; k < source.num_edges(); ++k) {
    perm[k] = edge_of_half[iso.half_edge_map[source.edges()[k].first]];
  }
  return perm;
}

int permutation_sign(std::span<const int> perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<char> seen(n, 0);
  int sign = 1;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = perm[j]) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

Isomorphism compose(const Isomorphism& first, const Isomorphism& second) {
  Isomorphism out;
  out.half_edge_map.resize(first.half_edge_map.size());
  out.vertex_map.resize(first.vertex_map.size());
  for (std::size_t h = 0; h < first.half_edge_map.size(); ++h) {
    out.half_edge_map[h] = second.half_edge_map[first.half_edge_map[h]];
  }
  for (std::size_t v = 0; v < first.vertex_map.size(); ++v) {
    out.vertex_map[v] = second.vertex_map[first.vertex_map[v]];
  }
  return out;
}

Isomorphism inverse(const Isomorphism& iso) {
  Isomorphism out;
  out.half_edge_map.resize(iso.half_edge_map.size());
  out.vertex_map.resize(iso.vertex_map.size());
  for (std::size_t h = 0; h < iso.half_edge_map.size(); ++h) {
    out.half_edge_map[iso.half_edge_map[h]] = static_cast<int>(h);
  }
  for (std::size_t v = 0; v < iso.vertex_map.size(); ++v) {
    out.vertex_map[iso.vertex_map[v]] = static_cast<int>(v);
  }
  return out;
}

Isomorphism identity_isomorphism(const StableGraph& g) {
  Isomorphism out;
  out.half_edge_map.resize(g.num_half_edges());
  out.vertex_map.resize(g.num_vertices());
  std::iota(out.half_edge_map.begin(), out.half_edge_map.end(), 0);
  std::iota(out.vertex_map.begin(), out.vertex_map.end(), 0);
  return out;
}

}  // namespace gctop
