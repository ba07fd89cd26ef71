#pragma once

#include <json.hpp>
#include <string>

#include "gctop/complex.hpp"
#include "gctop/formulas.hpp"
#include "gctop/stable_graph.hpp"
#include "gctop/tropicalize.hpp"

namespace gctop {

using Json = nlohmann::ordered_json;

// Graph JSON:
//   {"vertices":[{"genus":g},...], "edges":[[v,w],...], "legs":[{"vertex":v,"label":l},...]}
// Edges appear in edge-id order; loops as [v,v].
Json graph_to_json(const StableGraph& g);
// Throws ValidationError on schema violations.
StableGraph graph_from_json(const Json& j);

// {"g","n","mode","gens","ranks","betti","primes","exact"}; wall time is
// left out so identical runs produce identical bytes.
Json betti_report_to_json(const BettiReport& r);
Json comparison_to_json(const ModeComparison& c);

// Pants JSON: Graph JSON plus "lengths", optional "twists", "epsilon".
MetricPantsData pants_from_json(const Json& j);
// Graph JSON plus "lengths" (the string "inf" for infinite lengths).
Json tropical_curve_to_json(const TropicalCurve& c);

// "num/den", always with an explicit denominator.
std::string rational_to_string(const Rational& q);
// Integer as a JSON number when it fits in int64, else as a decimal string.
Json bigint_to_json(const BigInt& x);

}  // namespace gctop
