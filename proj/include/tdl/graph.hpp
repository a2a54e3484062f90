#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tdl/rational.hpp"

namespace tdl {

/// Unvalidated graph description, as read from a workspace file.
struct RawEdge {
  std::string id;
  std::string end1;
  std::string end2;
  Rational length;
};

struct RawGraph {
  std::vector<std::string> vertices;
  std::vector<RawEdge> edges;
};

/// An edge of a validated graph. `lo` and `hi` are vertex indices with
/// lo < hi, so offsets along the edge are measured from the end whose id
/// sorts first.
struct Edge {
  std::string id;
  std::size_t lo;
  std::size_t hi;
  Rational length;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct ValidateOptions {
  /// Replace every loop edge by two parallel halves meeting at a new midpoint
  /// vertex instead of rejecting it.
  bool subdivide_loops = false;
};

/// A finite connected loopless multigraph with positive rational edge lengths.
///
/// Vertices are stored sorted by id and edges sorted by id, so index order is
/// the canonical order used for every deterministic iteration in the library.
/// Instances are immutable after construction.
class MetricGraph {
 public:
  static MetricGraph validate(const RawGraph& raw, const ValidateOptions& options = {});

  std::size_t vertex_count() const { return vertex_ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::string& vertex_id(std::size_t v) const { return vertex_ids_.at(v); }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Edge indices incident to `v`, ascending.
  const std::vector<std::size_t>& incident(std::size_t v) const { return incident_.at(v); }
  int degree(std::size_t v) const { return static_cast<int>(incident_.at(v).size()); }

  std::size_t other_end(std::size_t e, std::size_t v) const {
    return edges_[e].lo == v ? edges_[e].hi : edges_[e].lo;
  }

  std::optional<std::size_t> find_vertex(std::string_view id) const;
  std::optional<std::size_t> find_edge(std::string_view id) const;

  /// First Betti number #E - #V + 1.
  int genus() const;

  RawGraph raw() const;

  friend bool operator==(const MetricGraph&, const MetricGraph&) = default;

 private:
  std::vector<std::string> vertex_ids_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
};

inline MetricGraph validate_graph(const RawGraph& raw, const ValidateOptions& options = {}) {
  return MetricGraph::validate(raw, options);
}

inline int genus(const MetricGraph& g) { return g.genus(); }

/// An exact point of a metric graph: a vertex, or an interior point of an
/// edge at a rational offset from the edge's `lo` end. Offsets 0 and the full
/// length never occur; those points are always stored in vertex form.
class PointRef {
 public:
  static PointRef vertex(std::size_t v) { return PointRef(v); }

  /// Point at `offset` from the `lo` end of edge `e`; normalizes the two ends
  /// to vertex form and throws InvalidPoint outside [0, length].
  static PointRef on_edge(const MetricGraph& g, std::size_t e, const Rational& offset);

  /// Point at distance `dist` from vertex `from` along edge `e`.
  static PointRef along(const MetricGraph& g, std::size_t e, std::size_t from, const Rational& dist);

  bool is_vertex() const { return !edge_.has_value(); }
  std::size_t vertex_index() const { return index_; }
  std::size_t edge_index() const { return *edge_; }
  /// Distance from the `lo` end of the point's edge; zero for a vertex.
  const Rational& offset() const { return offset_; }

  friend bool operator==(const PointRef&, const PointRef&) = default;
  friend std::strong_ordering operator<=>(const PointRef& a, const PointRef& b);

 private:
  explicit PointRef(std::size_t v) : index_(v) {}
  PointRef(std::size_t e, Rational offset) : index_(0), edge_(e), offset_(std::move(offset)) {}

  std::size_t index_ = 0;
  std::optional<std::size_t> edge_;
  Rational offset_;
};

/// "w1" for vertices, "e1@1/3" for edge points.
std::string describe(const MetricGraph& g, const PointRef& p);

/// Inverse of describe(); also accepts a bare vertex id.
PointRef parse_point(const MetricGraph& g, std::string_view text);

/// Exact shortest-path distance between two points.
Rational distance(const MetricGraph& g, const PointRef& p, const PointRef& q);

}  // namespace tdl
