#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tdl/divisor.hpp"
#include "tdl/graph.hpp"
#include "tdl/model.hpp"

namespace tdl {

inline constexpr std::size_t kDefaultFreeVertexCap = 20;

/// A complement component's certifying vertex and its number of model edges
/// into the special region.
struct ComplementCertificate {
  std::size_t vertex;
  int edges_into_region;
};

/// A special open set, canonicalized by its vertex trace W on the model
/// refined at the avoided points. The region contains W, every edge among W
/// and every edge leaving W minus its far end.
struct SpecialWitness {
  std::vector<std::size_t> vertices;
  OpenRegion region;
  std::vector<ComplementCertificate> complement_report;
};

struct SearchOptions {
  /// Only regions containing this point (it becomes a model vertex).
  std::optional<PointRef> containing;
  bool enumerate_all = false;
  std::size_t free_vertex_cap = kDefaultFreeVertexCap;
};

/// True iff every component of the region's complement has a boundary point
/// with at least two exit directions. Cross-checked against the burning test
/// on the divisor of boundary points; a disagreement is an InternalGeometry
/// defect. Throws EmptyRegion or NotConnected.
bool is_special_region(const OpenRegion& region);

/// Special open sets disjoint from `a`: the first one found, or all of them.
/// Throws EmptySet for empty `a` and SearchCapExceeded when the refined model
/// has more free vertices than the cap.
std::vector<SpecialWitness> special_avoiding(const MetricGraph& g, const std::vector<PointRef>& a,
                                             const SearchOptions& options = {});

/// Divisor D whose linear system has support exactly the complement of the
/// witness region: one chip on each boundary point plus one on each
/// independent cycle of the other pieces. Throws InvalidWitness when the
/// result fails its reducedness checks.
Divisor witness_divisor(const SpecialWitness& witness);

struct RdsVerdict {
  bool is_rds = false;
  std::optional<SpecialWitness> witness;
  std::optional<Divisor> witness_divisor;
};

RdsVerdict is_rank_determining(const MetricGraph& g, const std::vector<PointRef>& a,
                               std::size_t free_vertex_cap = kDefaultFreeVertexCap);

/// The closed set L(A): everything outside the union of special open sets
/// avoiding `a`, on the model refined at `a`.
ClosedLocus l_closure(const MetricGraph& g, const std::vector<PointRef>& a,
                      std::size_t free_vertex_cap = kDefaultFreeVertexCap);

struct MinimalityVerdict {
  bool minimal = false;
  std::vector<PointRef> removable;
  /// For each non-removable point, a special open set meeting the set only there.
  std::vector<std::pair<PointRef, SpecialWitness>> witnesses;
};

/// Throws NotRds when `a` is not rank-determining.
MinimalityVerdict is_minimal_rds(const MetricGraph& g, const std::vector<PointRef>& a,
                                 std::size_t free_vertex_cap = kDefaultFreeVertexCap);

struct SpanningOptions {
  /// Edge ids of a spanning tree; default is the first spanning tree in edge order.
  std::optional<std::vector<std::string>> tree;
  /// A point of the tree; default is the first vertex.
  std::optional<PointRef> base;
  /// One interior point on each non-tree edge; default is the midpoints.
  std::optional<std::vector<PointRef>> cycle_points;
};

/// A rank-determining set of g + 1 points: a base point on a spanning tree and
/// one point on each edge outside it.
std::vector<PointRef> construct_rds_spanning(const MetricGraph& g, const SpanningOptions& options = {});

/// Experimental: every subset of `pool` of size at most `max_size` that is a
/// minimal rank-determining set. Throws SearchCapExceeded for pools larger
/// than `pool_cap`.
std::vector<std::vector<PointRef>> minimal_rds_search(const MetricGraph& g, const std::vector<PointRef>& pool,
                                                      std::size_t max_size,
                                                      std::size_t free_vertex_cap = kDefaultFreeVertexCap,
                                                      std::size_t pool_cap = kDefaultFreeVertexCap);

}  // namespace tdl
