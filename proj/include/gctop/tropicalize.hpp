#pragma once

#include <optional>
#include <vector>

#include "gctop/stable_graph.hpp"

namespace gctop {

// Collar-lemma constant log(3 + 2*sqrt(2)); the threshold epsilon must be
// strictly below it.
double collar_constant();

/// Lengths (and ignored twists) along a pants decomposition, indexed by
/// edge id of `pants`. A length of exactly 0 encodes a node.
struct MetricPantsData {
  StableGraph pants;
  std::vector<double> lengths;
  std::optional<std::vector<double>> twists;
  double epsilon = 1.0;

  // Throws ConfigError for epsilon outside (0, collar_constant()),
  // InvalidArgument for bad lengths/twists, ValidationError for a graph that
  // is not a stable trivalent genus-zero pants graph with 3g-3+n edges.
  void validate() const;
};

/// Stable graph with edge lengths in (0, +inf], indexed by edge id.
struct TropicalCurve {
  StableGraph graph;
  std::vector<double> lengths;

  bool has_infinite_length() const;
};

/// Curves with length < epsilon survive with length -log(length/epsilon)
/// (+inf for a node); the others are contracted. Surviving edges keep their
/// relative edge-id order.
TropicalCurve tropicalize(const MetricPantsData& data);

/// All vertex genera zero. Throws InvalidArgument if a length is infinite.
bool is_in_cv(const TropicalCurve& curve);

/// The tropicalization is finite and lies in CV.
bool is_in_hm(const MetricPantsData& data);

}  // namespace gctop
