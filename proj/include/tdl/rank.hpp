#pragma once

#include <optional>
#include <vector>

#include "tdl/divisor.hpp"
#include "tdl/graph.hpp"
#include "tdl/reduction.hpp"

namespace tdl {

struct RankOptions {
  ReduceOptions reduce{kDefaultIterationCap, false};
  /// Return deg(D) - g directly when deg(D) > 2g - 2.
  bool rr_shortcut = false;
  /// With rr_shortcut, also run the full computation and fail loudly on a mismatch.
  bool cross_check = false;
};

struct RankReport {
  int rank = -1;
  /// An effective E over the test set with |D - E| empty, of degree rank + 1.
  std::optional<Divisor> failing_witness;
  /// Number of emptiness tests performed.
  std::size_t levels_checked = 0;
};

/// An effective divisor equivalent to `d` (reduced at the first vertex), or
/// nullopt when |d| is empty.
std::optional<Divisor> linear_system_nonempty(const MetricGraph& g, const Divisor& d,
                                              const RankOptions& options = {});

/// Rank of `d`, testing E over the graph's vertices.
RankReport rank(const MetricGraph& g, const Divisor& d, const RankOptions& options = {});

/// Rank of `d`, testing E over `base_set`, which must be a vertex set of the
/// graph (InvalidVertexSet otherwise).
RankReport rank(const MetricGraph& g, const Divisor& d, const std::vector<PointRef>& base_set,
                const RankOptions& options = {});

/// Rank with E restricted to multisets over `a`. Throws EmptySet for empty `a`.
RankReport restricted_rank(const MetricGraph& g, const Divisor& d, const std::vector<PointRef>& a,
                           const RankOptions& options = {});

/// True when the points contain every vertex of degree other than 2 and cut
/// the graph into open segments with two distinct ends each.
bool is_vertex_set(const MetricGraph& g, const std::vector<PointRef>& points);

struct RrReport {
  int rank;
  int dual_rank;  // rank of K - D
  long long lhs;  // rank - dual_rank
  long long rhs;  // deg(D) + 1 - g
  bool equal;
};

/// Computes both sides of the Riemann-Roch identity independently. The
/// degree shortcut is never used here.
RrReport rr_verify(const MetricGraph& g, const Divisor& d, const ReduceOptions& options = {});

/// Rank on the combinatorial graph underlying a unit-length metric graph, by
/// integer chip-firing. Throws NotUnitGraph or NotVertexSupported.
int fg_rank(const MetricGraph& g, const Divisor& d);

}  // namespace tdl
