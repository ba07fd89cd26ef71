#include "gctop/json_io.hpp"

#include <cmath>
#include <limits>

#include "gctop/errors.hpp"

namespace gctop {

Json graph_to_json(const StableGraph& g) {
  Json j;
  j["vertices"] = Json::array();
  for (int v = 0; v < g.num_vertices(); ++v) {
    j["vertices"].push_back({{"genus", g.genus(v)}});
  }
  j["edges"] = Json::array();
  for (int k = 0; k < g.num_edges(); ++k) {
    auto [a, b] = g.endpoints(k);
    j["edges"].push_back({a, b});
  }
  j["legs"] = Json::array();
  for (int label = 1; label <= g.num_legs(); ++label) {
    j["legs"].push_back({{"vertex", g.leg_vertex(label)}, {"label", label}});
  }
  return j;
}

StableGraph graph_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw ValidationError("graph JSON must be an object");
    std::vector<int> genus;
    for (const auto& v : j.at("vertices")) genus.push_back(v.at("genus").get<int>());
    const int nv = static_cast<int>(genus.size());
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) {
        throw ValidationError("each edge must be a pair [v, w]");
      }
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    std::vector<LegSpec> legs;
    if (j.contains("legs")) {
      for (const auto& l : j.at("legs")) {
        legs.push_back({l.at("vertex").get<int>(), l.at("label").get<int>()});
      }
    }
    for (const auto& [a, b] : edges) {
      if (a < 0 || a >= nv || b < 0 || b >= nv) {
        throw ValidationError("edge endpoint out of range");
      }
    }
    for (const auto& l : legs) {
      if (l.vertex < 0 || l.vertex >= nv) throw ValidationError("leg vertex out of range");
    }
    return StableGraph::from_edges(std::move(genus), edges, legs);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("graph JSON: ") + e.what());
  }
}

Json betti_report_to_json(const BettiReport& r) {
  Json j;
  j["g"] = r.genus;
  j["n"] = r.legs;
  j["mode"] = to_string(r.mode);
  j["gens"] = r.gens;
  j["ranks"] = r.ranks;
  j["betti"] = r.betti;
  j["primes"] = r.primes;
  j["exact"] = r.exact;
  return j;
}

Json comparison_to_json(const ModeComparison& c) {
  Json j;
  j["g"] = c.full.genus;
  j["n"] = c.full.legs;
  j["mode"] = "both";
  j["full"] = betti_report_to_json(c.full);
  j["cv"] = betti_report_to_json(c.cv);
  j["equal_per_degree"] = c.equal_per_degree;
  j["equal"] = c.all_equal;
  j["expected_exception"] = c.expected_exception;
  return j;
}

MetricPantsData pants_from_json(const Json& j) {
  MetricPantsData d;
  d.pants = graph_from_json(j);
  try {
    d.lengths = j.at("lengths").get<std::vector<double>>();
    if (j.contains("twists") && !j.at("twists").is_null()) {
      d.twists = j.at("twists").get<std::vector<double>>();
    }
    d.epsilon = j.at("epsilon").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("pants JSON: ") + e.what());
  }
  return d;
}

Json tropical_curve_to_json(const TropicalCurve& c) {
  Json j = graph_to_json(c.graph);
  j["lengths"] = Json::array();
  for (double l : c.lengths) {
    if (std::isinf(l)) {
      j["lengths"].push_back("inf");
    } else {
      j["lengths"].push_back(l);
    }
  }
  return j;
}

std::string rational_to_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

Json bigint_to_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() &&
      x <= std::numeric_limits<std::int64_t>::max()) {
    return x.convert_to<std::int64_t>();
  }
  return x.str();
}

}  // namespace gctop
