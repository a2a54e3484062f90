#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tdl/divisor.hpp"
#include "tdl/graph.hpp"

namespace tdl {

struct Workspace {
  MetricGraph graph;
  std::map<std::string, Divisor> divisors;
  std::map<std::string, PointRef> points;
  std::map<std::string, std::vector<PointRef>> sets;

  /// Workspace name of `p` if one exists, otherwise its canonical description.
  std::string name_of(const PointRef& p) const;
  /// A point name or a canonical description ("w1", "e1@1/2").
  PointRef resolve_point(std::string_view text) const;
  std::string describe(const Divisor& d) const;

  friend bool operator==(const Workspace&, const Workspace&) = default;
};

/// Throws ParseError (with a field path) for malformed documents; graph
/// validation errors propagate unchanged.
Workspace parse_workspace(std::string_view text, const ValidateOptions& options = {});

/// Deterministic: sorted keys, canonical point order, lowest-terms rationals.
std::string serialize_workspace(const Workspace& ws);

Workspace load_workspace(const std::string& path, const ValidateOptions& options = {});

}  // namespace tdl
