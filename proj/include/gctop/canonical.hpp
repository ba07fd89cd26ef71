#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gctop/stable_graph.hpp"

namespace gctop {

inline constexpr std::uint32_t kGraphFormatVersion = 1;

// Byte strings holding serialized graphs. std::string is used as the byte
// container so keys hash and compare without extra code.
using GraphBytes = std::string;

/// Serialize a graph in its current layout:
///   u32 format version | u16 V | u16 E | u16 N | V x u16 genus |
///   E x (u16, u16) endpoints by edge id | N x u16 vertex of leg label 1..N
/// all little-endian. For canonical representatives the bytes are an
/// isomorphism invariant.
GraphBytes serialize(const StableGraph& g);

/// Inverse of serialize() for canonical-layout graphs. Throws
/// ValidationError on a bad header or truncated input.
StableGraph deserialize(std::string_view bytes);

struct CanonicalForm {
  StableGraph graph;
  Isomorphism iso;  // from the input graph to `graph`
};

struct SearchLimits {
  std::size_t max_leaves = 5'000'000;
  std::size_t max_automorphisms = 1'000'000;
};

/// Canonical representative by individualization-refinement over vertices,
/// minimizing a certificate over all leaves of the search tree. The canonical
/// layout lists edges sorted by endpoint pair (lo <= hi) and legs by label.
CanonicalForm canonical_form(const StableGraph& g,
                             const SearchLimits& limits = {});

/// Convenience: serialize(canonical_form(g).graph).
GraphBytes canonical_bytes(const StableGraph& g);

bool are_isomorphic(const StableGraph& a, const StableGraph& b);

/// Vertex permutations induced by automorphisms (each listed once).
std::vector<std::vector<int>> vertex_automorphisms(
    const StableGraph& g, const SearchLimits& limits = {});

/// The full automorphism group on half-edges, including permutations of
/// parallel edges and half-edge swaps of loops. Throws ResourceError if the
/// group order exceeds limits.max_automorphisms.
std::vector<Isomorphism> automorphisms(const StableGraph& g,
                                       const SearchLimits& limits = {});

/// Group order without materializing the group.
std::size_t automorphism_count(const StableGraph& g,
                               const SearchLimits& limits = {});

/// False iff some automorphism induces an odd permutation of the edges.
bool is_orientable(const StableGraph& g);

}  // namespace gctop
