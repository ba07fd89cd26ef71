#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace gctop {

// An edge as a pair of half-edges, first < second.
struct HalfEdgePair {
  int first = 0;
  int second = 0;
  friend bool operator==(const HalfEdgePair&, const HalfEdgePair&) = default;
};

struct LegSpec {
  int vertex = 0;
  int label = 0;
};

/// A dual graph: half-edges with an involution, a vertex map, a genus
/// decoration on vertices, and labels 1..n on the legs (fixed points of the
/// involution).
///
/// Edges are numbered by increasing smallest half-edge. That numbering is the
/// "edge id" used throughout the library and is preserved (up to removal of
/// the contracted edge) by contract_edge().
///
/// The constructor enforces the structural invariants only (involution, index
/// ranges, leg labels forming 1..n). Connectivity and stability are separate
/// predicates so that raw pieces such as the output of cut_all_edges() can be
/// represented.
class StableGraph {
 public:
  StableGraph() = default;
  StableGraph(std::vector<int> genus, std::vector<int> vertex_of,
              std::vector<int> involution, std::vector<int> leg_label);

  // Half-edges 2k, 2k+1 form edge k (attached to edges[k].first / .second),
  // legs follow in the given order.
  static StableGraph from_edges(std::vector<int> genus,
                                std::span<const std::pair<int, int>> edges,
                                std::span<const LegSpec> legs);

  int num_vertices() const { return static_cast<int>(genus_.size()); }
  int num_half_edges() const { return static_cast<int>(vertex_of_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_legs() const { return num_legs_; }

  int genus(int v) const { return genus_[v]; }
  const std::vector<int>& genera() const { return genus_; }
  int vertex_of(int h) const { return vertex_of_[h]; }
  int involution(int h) const { return involution_[h]; }
  bool is_leg(int h) const { return involution_[h] == h; }
  // 0 for half-edges that belong to an edge.
  int leg_label(int h) const { return leg_label_[h]; }

  const std::vector<HalfEdgePair>& edges() const { return edges_; }
  std::pair<int, int> endpoints(int edge) const;
  bool is_loop(int edge) const;

  // n(v): number of half-edges (edge ends and legs) at v.
  int valence(int v) const;
  // Vertex carrying the leg with the given label.
  int leg_vertex(int label) const;

  bool is_connected() const;

  friend bool operator==(const StableGraph&, const StableGraph&) = default;

 private:
  std::vector<int> genus_;
  std::vector<int> vertex_of_;
  std::vector<int> involution_;
  std::vector<int> leg_label_;
  std::vector<HalfEdgePair> edges_;
  int num_legs_ = 0;
};

/// Isomorphism between two graphs: images of half-edges and of vertices.
struct Isomorphism {
  std::vector<int> half_edge_map;
  std::vector<int> vertex_map;
  friend bool operator==(const Isomorphism&, const Isomorphism&) = default;
};

/// Sum of vertex genera plus first Betti number. Throws ValidationError on a
/// disconnected graph.
int total_genus(const StableGraph& g);

/// Edge contraction. A non-loop edge merges its endpoints (genera add); a
/// loop is deleted and raises the genus of its vertex by one. Edge ids above
/// `edge` shift down by one; vertex ids above the removed vertex shift down.
StableGraph contract_edge(const StableGraph& g, int edge);

/// One single-vertex graph per vertex; every half-edge at the vertex becomes
/// a leg, labelled 1..k in increasing order of the original half-edge index.
std::vector<StableGraph> cut_all_edges(const StableGraph& g);

bool is_stable(const StableGraph& g);
bool is_semistable(const StableGraph& g);

/// Checks that `iso` is an isomorphism from `a` to `b`: bijective, commutes
/// with involutions and vertex maps, preserves genera and leg labels.
bool is_isomorphism(const StableGraph& a, const StableGraph& b,
                    const Isomorphism& iso);

/// Permutation induced on edge ids by an isomorphism (source id -> target id).
std::vector<int> edge_permutation(const StableGraph& source,
                                  const StableGraph& target,
                                  const Isomorphism& iso);

/// +1 / -1 sign of a permutation given as an image vector.
int permutation_sign(std::span<const int> perm);

/// Composition (second after first), for automorphism-group checks.
Isomorphism compose(const Isomorphism& first, const Isomorphism& second);
Isomorphism inverse(const Isomorphism& iso);
Isomorphism identity_isomorphism(const StableGraph& g);

}  // namespace gctop
