#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "tdl/graph.hpp"
#include "tdl/rational.hpp"

namespace tdl {

/// A piece of a base edge between two consecutive model vertices. `u` sits at
/// offset `from` and `v` at offset `to` along the base edge, with from < to.
struct ModelEdge {
  std::size_t u;
  std::size_t v;
  std::size_t base_edge;
  Rational from;
  Rational to;

  Rational length() const { return to - from; }
};

/// Combinatorial model of a metric graph whose vertices are the base vertices
/// plus a finite set of marked points.
///
/// Model vertices 0..n-1 are the base vertices in the same order; marks follow
/// in canonical point order. Model edges are listed by base edge, then by
/// position along it. The model keeps a pointer to its base graph, which must
/// outlive it.
class RefinedModel {
 public:
  RefinedModel(const MetricGraph& base, const std::vector<PointRef>& marks);

  const MetricGraph& base() const { return *base_; }

  std::size_t vertex_count() const { return points_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const PointRef& point(std::size_t mv) const { return points_.at(mv); }
  const ModelEdge& edge(std::size_t me) const { return edges_.at(me); }
  const std::vector<std::size_t>& incident(std::size_t mv) const { return incident_.at(mv); }
  std::size_t other_end(std::size_t me, std::size_t mv) const {
    return edges_[me].u == mv ? edges_[me].v : edges_[me].u;
  }
  bool is_base_vertex(std::size_t mv) const { return mv < base_->vertex_count(); }

  std::optional<std::size_t> find(const PointRef& p) const;
  /// Like find(), but throws InvalidPoint when `p` is not a model vertex.
  std::size_t vertex_of(const PointRef& p) const;
  /// The model edge whose open interior contains `p`; `p` must not be a model vertex.
  std::size_t edge_containing(const PointRef& p) const;

  /// The point at distance `dist` from model vertex `from` along model edge `me`.
  PointRef point_along(std::size_t me, std::size_t from, const Rational& dist) const;

  int genus() const {
    return static_cast<int>(edges_.size()) - static_cast<int>(points_.size()) + 1;
  }

  /// The model as a standalone metric graph. Mark vertices are named by
  /// describe(); split edges get a "#k" suffix.
  MetricGraph as_graph() const;

 private:
  const MetricGraph* base_;
  std::vector<PointRef> points_;
  std::vector<ModelEdge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<std::size_t> first_piece_;  // per base edge, index of its first model edge
};

using ModelPtr = std::shared_ptr<const RefinedModel>;

inline ModelPtr refine(const MetricGraph& g, const std::vector<PointRef>& marks) {
  return std::make_shared<const RefinedModel>(g, marks);
}

class ClosedLocus;

/// A connected open subset of the graph whose boundary consists of model
/// vertices. Such a region is determined by its interior model vertices:
/// edges with both ends inside are included whole, edges with one end inside
/// are included minus the outside end ("stubs").
class OpenRegion {
 public:
  enum class Part { None, Full, Stub };

  OpenRegion(ModelPtr model, std::vector<bool> interior);

  const RefinedModel& model() const { return *model_; }
  const ModelPtr& model_ptr() const { return model_; }

  const std::vector<bool>& interior_mask() const { return interior_; }
  bool is_interior(std::size_t mv) const { return interior_[mv]; }
  std::vector<std::size_t> interior_vertices() const;
  Part part(std::size_t me) const;
  std::vector<std::size_t> full_edges() const;
  /// (model edge, interior end) pairs.
  std::vector<std::pair<std::size_t, std::size_t>> stubs() const;
  /// Model vertices outside the region adjacent to it, ascending.
  std::vector<std::size_t> boundary() const;

  bool empty() const;
  bool is_whole_graph() const;
  bool is_connected() const;
  bool contains(const PointRef& p) const;

  ClosedLocus complement() const;

  friend bool operator==(const OpenRegion& a, const OpenRegion& b) {
    return a.model_ == b.model_ && a.interior_ == b.interior_;
  }

 private:
  ModelPtr model_;
  std::vector<bool> interior_;
};

/// A closed subset made of model vertices and closed model edges; every
/// endpoint of a closed edge is one of the vertices.
class ClosedLocus {
 public:
  ClosedLocus(ModelPtr model, std::vector<bool> vertices, std::vector<bool> closed_edges);

  /// The vertices plus every model edge with both ends among them.
  static ClosedLocus induced(ModelPtr model, const std::vector<std::size_t>& vertices);

  const RefinedModel& model() const { return *model_; }
  const ModelPtr& model_ptr() const { return model_; }

  bool has_vertex(std::size_t mv) const { return vertices_[mv]; }
  bool has_edge(std::size_t me) const { return closed_edges_[me]; }
  const std::vector<bool>& vertex_mask() const { return vertices_; }
  const std::vector<bool>& edge_mask() const { return closed_edges_; }
  std::vector<std::size_t> vertices() const;

  bool empty() const;
  bool contains(const PointRef& p) const;
  bool is_connected() const;

  /// Vertices of the locus with at least one incident model edge leaving it.
  std::vector<std::size_t> boundary() const;
  bool is_boundary(std::size_t mv) const;
  /// Number of edge directions leaving the locus at `mv`, with multiplicity.
  /// Throws NotBoundary when `mv` is not a boundary vertex.
  int outdeg(std::size_t mv) const;

  /// Connected components, each as a ClosedLocus on the same model, ordered by
  /// their smallest vertex.
  std::vector<ClosedLocus> components() const;

  friend bool operator==(const ClosedLocus& a, const ClosedLocus& b) {
    return a.model_ == b.model_ && a.vertices_ == b.vertices_ && a.closed_edges_ == b.closed_edges_;
  }

 private:
  ModelPtr model_;
  std::vector<bool> vertices_;
  std::vector<bool> closed_edges_;
};

/// The connected component of (graph minus `blocked`) containing `seed`.
OpenRegion component_region(const ModelPtr& model, const std::vector<bool>& blocked, std::size_t seed);

Rational distance(const RefinedModel& model, const PointRef& p, const PointRef& q);

}  // namespace tdl
