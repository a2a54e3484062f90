#pragma once

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "tdl/graph.hpp"

namespace tdl {

/// Multiply edge lengths by positive factors, keyed by edge id. Edges not
/// listed keep their length.
struct Rescale {
  std::map<std::string, Rational> factors;
};

/// Insert new vertices at the given offsets (from the edge's `lo` end),
/// keyed by edge id.
struct Subdivide {
  std::map<std::string, std::vector<Rational>> cuts;
};

using TransformSpec = std::variant<Rescale, Subdivide>;

/// A homeomorphic copy of a graph together with the induced point map.
struct Transformed {
  MetricGraph graph;
  std::function<PointRef(const PointRef&)> map;
};

Transformed transform(const MetricGraph& g, const TransformSpec& spec);

/// Every edge cut at its midpoint.
Subdivide midpoint_subdivision(const MetricGraph& g);

}  // namespace tdl
