#include "tdl/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "tdl/errors.hpp"

namespace tdl {

namespace {

std::string fresh_id(const std::set<std::string>& taken, const std::string& stem) {
  std::string id = stem;
  while (taken.count(id)) id += "'";
  return id;
}

}  // namespace

MetricGraph MetricGraph::validate(const RawGraph& raw, const ValidateOptions& options) {
  std::set<std::string> vertex_set;
  for (const auto& v : raw.vertices) {
    if (!vertex_set.insert(v).second) throw Error(Errc::DuplicateId, "vertex '" + v + "' appears twice");
  }
  std::set<std::string> edge_set;
  for (const auto& e : raw.edges) {
    if (!edge_set.insert(e.id).second) throw Error(Errc::DuplicateId, "edge '" + e.id + "' appears twice");
  }

  std::vector<RawEdge> edges;
  for (const auto& e : raw.edges) {
    for (const auto* end : {&e.end1, &e.end2}) {
      if (!vertex_set.count(*end)) {
        throw Error(Errc::UnknownId, "edge '" + e.id + "' references unknown vertex '" + *end + "'");
      }
    }
    if (e.length.sign() <= 0) {
      throw Error(Errc::NonpositiveLength, "edge '" + e.id + "' has length " + e.length.str());
    }
    if (e.end1 != e.end2) {
      edges.push_back(e);
      continue;
    }
    if (!options.subdivide_loops) {
      throw Error(Errc::LoopEdge, "edge '" + e.id + "' is a loop at '" + e.end1 +
                                      "'; subdivide it or enable loop subdivision");
    }
    const std::string mid = fresh_id(vertex_set, e.id + ".mid");
    vertex_set.insert(mid);
    const Rational half = e.length / Rational(2);
    for (const char* suffix : {".a", ".b"}) {
      const std::string id = fresh_id(edge_set, e.id + suffix);
      edge_set.insert(id);
      edges.push_back(RawEdge{id, e.end1, mid, half});
    }
  }
  if (edges.empty()) throw Error(Errc::NoEdges, "a metric graph needs at least one edge");

  MetricGraph g;
  g.vertex_ids_.assign(vertex_set.begin(), vertex_set.end());
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < g.vertex_ids_.size(); ++i) index[g.vertex_ids_[i]] = i;

  std::sort(edges.begin(), edges.end(), [](const RawEdge& a, const RawEdge& b) { return a.id < b.id; });
  g.incident_.assign(g.vertex_ids_.size(), {});
  for (const auto& e : edges) {
    std::size_t a = index[e.end1];
    std::size_t b = index[e.end2];
    if (b < a) std::swap(a, b);
    const std::size_t ei = g.edges_.size();
    g.edges_.push_back(Edge{e.id, a, b, e.length});
    g.incident_[a].push_back(ei);
    g.incident_[b].push_back(ei);
  }

  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t e : g.incident_[v]) {
      const std::size_t w = g.other_end(e, v);
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != g.vertex_count()) {
    const auto it = std::find(seen.begin(), seen.end(), false);
    throw Error(Errc::Disconnected,
                "vertex '" + g.vertex_ids_[static_cast<std::size_t>(it - seen.begin())] +
                    "' is not connected to '" + g.vertex_ids_[0] + "'");
  }
  return g;
}

std::optional<std::size_t> MetricGraph::find_vertex(std::string_view id) const {
  const auto it = std::lower_bound(vertex_ids_.begin(), vertex_ids_.end(), id);
  if (it == vertex_ids_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - vertex_ids_.begin());
}

std::optional<std::size_t> MetricGraph::find_edge(std::string_view id) const {
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                                   [](const Edge& e, std::string_view key) { return e.id < key; });
  if (it == edges_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

int MetricGraph::genus() const {
  return static_cast<int>(edges_.size()) - static_cast<int>(vertex_ids_.size()) + 1;
}

RawGraph MetricGraph::raw() const {
  RawGraph r;
  r.vertices = vertex_ids_;
  for (const auto& e : edges_) r.edges.push_back(RawEdge{e.id, vertex_ids_[e.lo], vertex_ids_[e.hi], e.length});
  return r;
}

PointRef PointRef::on_edge(const MetricGraph& g, std::size_t e, const Rational& offset) {
  if (e >= g.edge_count()) throw Error(Errc::InvalidPoint, "edge index out of range");
  const Edge& edge = g.edge(e);
  if (offset.sign() < 0 || offset > edge.length) {
    throw Error(Errc::InvalidPoint, "offset " + offset.str() + " outside edge '" + edge.id + "' of length " +
                                        edge.length.str());
  }
  if (offset.is_zero()) return PointRef(edge.lo);
  if (offset == edge.length) return PointRef(edge.hi);
  return PointRef(e, offset);
}

PointRef PointRef::along(const MetricGraph& g, std::size_t e, std::size_t from, const Rational& dist) {
  const Edge& edge = g.edge(e);
  return on_edge(g, e, from == edge.lo ? dist : edge.length - dist);
}

std::strong_ordering operator<=>(const PointRef& a, const PointRef& b) {
  if (a.is_vertex() != b.is_vertex()) return a.is_vertex() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.is_vertex()) return a.index_ <=> b.index_;
  if (auto c = *a.edge_ <=> *b.edge_; c != 0) return c;
  return a.offset_ <=> b.offset_;
}

std::string describe(const MetricGraph& g, const PointRef& p) {
  if (p.is_vertex()) return g.vertex_id(p.vertex_index());
  return g.edge(p.edge_index()).id + "@" + p.offset().str();
}

PointRef parse_point(const MetricGraph& g, std::string_view text) {
  const auto at = text.find('@');
  if (at == std::string_view::npos) {
    if (auto v = g.find_vertex(text)) return PointRef::vertex(*v);
    throw Error(Errc::UnknownId, "no vertex named '" + std::string(text) + "'");
  }
  const auto e = g.find_edge(text.substr(0, at));
  if (!e) throw Error(Errc::UnknownId, "no edge named '" + std::string(text.substr(0, at)) + "'");
  return PointRef::on_edge(g, *e, Rational::parse(text.substr(at + 1)));
}

}  // namespace tdl
