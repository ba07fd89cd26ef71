#include "gctop/tropicalize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gctop/errors.hpp"

namespace gctop {

double collar_constant() { return std::log(3.0 + 2.0 * std::sqrt(2.0)); }

void MetricPantsData::validate() const {
  if (!(epsilon > 0.0) || !(epsilon < collar_constant())) {
    throw ConfigError("epsilon must satisfy 0 < epsilon < log(3+2*sqrt(2)) ~ 1.7627");
  }
  if (!pants.is_connected() || !is_stable(pants)) {
    throw ValidationError("pants graph must be connected and stable");
  }
  for (int v = 0; v < pants.num_vertices(); ++v) {
    if (pants.genus(v) != 0 || pants.valence(v) != 3) {
      throw ValidationError("pants graph vertices must have genus 0 and valence 3");
    }
  }
  const int g = total_genus(pants);
  if (pants.num_edges() != 3 * g - 3 + pants.num_legs()) {
    throw ValidationError("pants graph must have 3g-3+n edges");
  }
  if (static_cast<int>(lengths.size()) != pants.num_edges()) {
    throw InvalidArgument("need one length per pants curve");
  }
  for (double l : lengths) {
    if (!(l >= 0.0) || std::isinf(l)) {
      throw InvalidArgument("curve lengths must be finite and non-negative");
    }
  }
  if (twists) {
    if (static_cast<int>(twists->size()) != pants.num_edges()) {
      throw InvalidArgument("need one twist per pants curve");
    }
    for (double t : *twists) {
      if (!std::isfinite(t)) throw InvalidArgument("twists must be finite");
    }
  }
}

bool TropicalCurve::has_infinite_length() const {
  return std::any_of(lengths.begin(), lengths.end(),
                     [](double l) { return std::isinf(l); });
}

TropicalCurve tropicalize(const MetricPantsData& data) {
  data.validate();
  TropicalCurve out{data.pants, {}};
  // Contract long curves from the highest edge id down so that lower ids
  // stay valid.
  for (int e = data.pants.num_edges() - 1; e >= 0; --e) {
    if (data.lengths[e] >= data.epsilon) out.graph = contract_edge(out.graph, e);
  }
  for (int e = 0; e < data.pants.num_edges(); ++e) {
    const double l = data.lengths[e];
    if (l >= data.epsilon) continue;
    out.lengths.push_back(l == 0.0 ? std::numeric_limits<double>::infinity()
                                   : -std::log(l / data.epsilon));
  }
  return out;
}

bool is_in_cv(const TropicalCurve& curve) {
  if (curve.has_infinite_length()) {
    throw InvalidArgument("nodal tropical curves (infinite lengths) are not in CV");
  }
  const auto& g = curve.graph.genera();
  return std::all_of(g.begin(), g.end(), [](int x) { return x == 0; });
}

bool is_in_hm(const MetricPantsData& data) {
  const TropicalCurve curve = tropicalize(data);
  if (curve.has_infinite_length()) return false;
  return is_in_cv(curve);
}

}  // namespace gctop
