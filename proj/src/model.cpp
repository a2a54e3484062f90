#include "tdl/model.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "tdl/errors.hpp"

namespace tdl {

RefinedModel::RefinedModel(const MetricGraph& base, const std::vector<PointRef>& marks) : base_(&base) {
  const std::size_t n = base.vertex_count();
  for (std::size_t v = 0; v < n; ++v) points_.push_back(PointRef::vertex(v));

  std::set<PointRef> interior_marks;
  for (const auto& p : marks) {
    if (p.is_vertex()) {
      if (p.vertex_index() >= n) throw Error(Errc::InvalidPoint, "vertex index out of range");
      continue;
    }
    if (p.edge_index() >= base.edge_count()) throw Error(Errc::InvalidPoint, "edge index out of range");
    interior_marks.insert(p);
  }
  points_.insert(points_.end(), interior_marks.begin(), interior_marks.end());
  incident_.assign(points_.size(), {});

  std::size_t next_mark = n;
  first_piece_.reserve(base.edge_count() + 1);
  for (std::size_t e = 0; e < base.edge_count(); ++e) {
    const Edge& be = base.edge(e);
    first_piece_.push_back(edges_.size());
    std::size_t prev = be.lo;
    Rational prev_offset;
    while (next_mark < points_.size() && points_[next_mark].edge_index() == e) {
      edges_.push_back(ModelEdge{prev, next_mark, e, prev_offset, points_[next_mark].offset()});
      prev = next_mark;
      prev_offset = points_[next_mark].offset();
      ++next_mark;
    }
    edges_.push_back(ModelEdge{prev, be.hi, e, prev_offset, be.length});
  }
  first_piece_.push_back(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    incident_[edges_[i].u].push_back(i);
    incident_[edges_[i].v].push_back(i);
  }
}

std::optional<std::size_t> RefinedModel::find(const PointRef& p) const {
  if (p.is_vertex()) {
    if (p.vertex_index() < base_->vertex_count()) return p.vertex_index();
    return std::nullopt;
  }
  const auto first = points_.begin() + static_cast<std::ptrdiff_t>(base_->vertex_count());
  const auto it = std::lower_bound(first, points_.end(), p);
  if (it == points_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

std::size_t RefinedModel::vertex_of(const PointRef& p) const {
  if (auto mv = find(p)) return *mv;
  throw Error(Errc::InvalidPoint, describe(*base_, p) + " is not a vertex of the refined model");
}

std::size_t RefinedModel::edge_containing(const PointRef& p) const {
  if (p.is_vertex()) throw Error(Errc::InvalidPoint, "a vertex lies on no open edge");
  const std::size_t e = p.edge_index();
  for (std::size_t me = first_piece_.at(e); me < first_piece_[e + 1]; ++me) {
    if (edges_[me].from < p.offset() && p.offset() < edges_[me].to) return me;
  }
  throw Error(Errc::InvalidPoint, describe(*base_, p) + " is a vertex of the refined model");
}

PointRef RefinedModel::point_along(std::size_t me, std::size_t from, const Rational& dist) const {
  const ModelEdge& m = edges_.at(me);
  const Rational offset = from == m.u ? m.from + dist : m.to - dist;
  if (offset < m.from || offset > m.to) {
    throw Error(Errc::InvalidPoint, "distance " + dist.str() + " runs past the model edge");
  }
  return PointRef::on_edge(*base_, m.base_edge, offset);
}

MetricGraph RefinedModel::as_graph() const {
  RawGraph raw;
  for (const auto& p : points_) raw.vertices.push_back(describe(*base_, p));
  for (std::size_t e = 0; e < base_->edge_count(); ++e) {
    const std::size_t pieces = first_piece_[e + 1] - first_piece_[e];
    for (std::size_t k = 0; k < pieces; ++k) {
      const ModelEdge& m = edges_[first_piece_[e] + k];
      std::string id = base_->edge(e).id;
      if (pieces > 1) id += "#" + std::to_string(k + 1);
      raw.edges.push_back(RawEdge{id, raw.vertices[m.u], raw.vertices[m.v], m.length()});
    }
  }
  return MetricGraph::validate(raw);
}

// ---------------------------------------------------------------------------

OpenRegion::OpenRegion(ModelPtr model, std::vector<bool> interior)
    : model_(std::move(model)), interior_(std::move(interior)) {
  if (interior_.size() != model_->vertex_count()) {
    throw Error(Errc::InvalidArgument, "interior mask size does not match the model");
  }
}

std::vector<std::size_t> OpenRegion::interior_vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < interior_.size(); ++v) {
    if (interior_[v]) out.push_back(v);
  }
  return out;
}

OpenRegion::Part OpenRegion::part(std::size_t me) const {
  const ModelEdge& m = model_->edge(me);
  const int ends = static_cast<int>(interior_[m.u]) + static_cast<int>(interior_[m.v]);
  return ends == 2 ? Part::Full : (ends == 1 ? Part::Stub : Part::None);
}

std::vector<std::size_t> OpenRegion::full_edges() const {
  std::vector<std::size_t> out;
  for (std::size_t me = 0; me < model_->edge_count(); ++me) {
    if (part(me) == Part::Full) out.push_back(me);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> OpenRegion::stubs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t me = 0; me < model_->edge_count(); ++me) {
    if (part(me) == Part::Stub) {
      const ModelEdge& m = model_->edge(me);
      out.emplace_back(me, interior_[m.u] ? m.u : m.v);
    }
  }
  return out;
}

std::vector<std::size_t> OpenRegion::boundary() const {
  std::set<std::size_t> out;
  for (const auto& [me, inner] : stubs()) out.insert(model_->other_end(me, inner));
  return {out.begin(), out.end()};
}

bool OpenRegion::empty() const { return std::none_of(interior_.begin(), interior_.end(), [](bool b) { return b; }); }

bool OpenRegion::is_whole_graph() const {
  return std::all_of(interior_.begin(), interior_.end(), [](bool b) { return b; });
}

bool OpenRegion::is_connected() const {
  const auto inner = interior_vertices();
  if (inner.empty()) return false;
  std::vector<bool> seen(interior_.size(), false);
  std::vector<std::size_t> stack{inner.front()};
  seen[inner.front()] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t me : model_->incident(v)) {
      const std::size_t w = model_->other_end(me, v);
      if (interior_[w] && !seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == inner.size();
}

bool OpenRegion::contains(const PointRef& p) const {
  if (auto mv = model_->find(p)) return interior_[*mv];
  return part(model_->edge_containing(p)) != Part::None;
}

ClosedLocus OpenRegion::complement() const {
  std::vector<bool> vertices(interior_.size());
  for (std::size_t v = 0; v < interior_.size(); ++v) vertices[v] = !interior_[v];
  std::vector<bool> edges(model_->edge_count());
  for (std::size_t me = 0; me < edges.size(); ++me) edges[me] = part(me) == Part::None;
  return ClosedLocus(model_, std::move(vertices), std::move(edges));
}

// ---------------------------------------------------------------------------

ClosedLocus::ClosedLocus(ModelPtr model, std::vector<bool> vertices, std::vector<bool> closed_edges)
    : model_(std::move(model)), vertices_(std::move(vertices)), closed_edges_(std::move(closed_edges)) {
  if (vertices_.size() != model_->vertex_count() || closed_edges_.size() != model_->edge_count()) {
    throw Error(Errc::InvalidArgument, "locus masks do not match the model");
  }
  for (std::size_t me = 0; me < closed_edges_.size(); ++me) {
    const ModelEdge& m = model_->edge(me);
    if (closed_edges_[me] && (!vertices_[m.u] || !vertices_[m.v])) {
      throw Error(Errc::InvalidArgument, "closed edge without both endpoints in the locus");
    }
  }
}

ClosedLocus ClosedLocus::induced(ModelPtr model, const std::vector<std::size_t>& vertices) {
  std::vector<bool> vmask(model->vertex_count(), false);
  for (std::size_t v : vertices) vmask.at(v) = true;
  std::vector<bool> emask(model->edge_count(), false);
  for (std::size_t me = 0; me < emask.size(); ++me) {
    emask[me] = vmask[model->edge(me).u] && vmask[model->edge(me).v];
  }
  return ClosedLocus(std::move(model), std::move(vmask), std::move(emask));
}

std::vector<std::size_t> ClosedLocus::vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v]) out.push_back(v);
  }
  return out;
}

bool ClosedLocus::empty() const { return std::none_of(vertices_.begin(), vertices_.end(), [](bool b) { return b; }); }

bool ClosedLocus::contains(const PointRef& p) const {
  if (auto mv = model_->find(p)) return vertices_[*mv];
  return closed_edges_[model_->edge_containing(p)];
}

bool ClosedLocus::is_connected() const { return !empty() && components().size() == 1; }

bool ClosedLocus::is_boundary(std::size_t mv) const {
  if (!vertices_.at(mv)) return false;
  const auto& inc = model_->incident(mv);
  return std::any_of(inc.begin(), inc.end(), [&](std::size_t me) { return !closed_edges_[me]; });
}

std::vector<std::size_t> ClosedLocus::boundary() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (is_boundary(v)) out.push_back(v);
  }
  return out;
}

int ClosedLocus::outdeg(std::size_t mv) const {
  if (!is_boundary(mv)) {
    throw Error(Errc::NotBoundary, describe(model_->base(), model_->point(mv)) + " is not a boundary point");
  }
  int count = 0;
  for (std::size_t me : model_->incident(mv)) count += closed_edges_[me] ? 0 : 1;
  return count;
}

std::vector<ClosedLocus> ClosedLocus::components() const {
  const std::size_t n = vertices_.size();
  std::vector<std::size_t> label(n, n);
  std::vector<ClosedLocus> out;
  for (std::size_t root = 0; root < n; ++root) {
    if (!vertices_[root] || label[root] != n) continue;
    std::vector<bool> vmask(n, false);
    std::vector<bool> emask(closed_edges_.size(), false);
    std::vector<std::size_t> stack{root};
    label[root] = root;
    vmask[root] = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t me : model_->incident(v)) {
        if (!closed_edges_[me]) continue;
        emask[me] = true;
        const std::size_t w = model_->other_end(me, v);
        if (label[w] == n) {
          label[w] = root;
          vmask[w] = true;
          stack.push_back(w);
        }
      }
    }
    out.emplace_back(model_, std::move(vmask), std::move(emask));
  }
  return out;
}

// ---------------------------------------------------------------------------

OpenRegion component_region(const ModelPtr& model, const std::vector<bool>& blocked, std::size_t seed) {
  if (blocked.size() != model->vertex_count()) throw Error(Errc::InvalidArgument, "blocked mask size mismatch");
  if (blocked.at(seed)) throw Error(Errc::InvalidArgument, "seed vertex is blocked");
  std::vector<bool> reached(blocked.size(), false);
  std::vector<std::size_t> stack{seed};
  reached[seed] = true;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t me : model->incident(v)) {
      const std::size_t w = model->other_end(me, v);
      if (!blocked[w] && !reached[w]) {
        reached[w] = true;
        stack.push_back(w);
      }
    }
  }
  return OpenRegion(model, std::move(reached));
}

Rational distance(const RefinedModel& model, const PointRef& p, const PointRef& q) {
  return distance(model.base(), p, q);
}

Rational distance(const MetricGraph& g, const PointRef& p, const PointRef& q) {
  if (p == q) return Rational(0);
  const RefinedModel model(g, {p, q});
  const std::size_t n = model.vertex_count();
  const std::size_t source = model.vertex_of(p);
  const std::size_t target = model.vertex_of(q);
  std::vector<std::optional<Rational>> best(n);
  std::vector<bool> done(n, false);
  best[source] = Rational(0);
  for (;;) {
    std::optional<std::size_t> next;
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v] && best[v] && (!next || *best[v] < *best[*next])) next = v;
    }
    if (!next) break;
    const std::size_t v = *next;
    if (v == target) return *best[v];
    done[v] = true;
    for (std::size_t me : model.incident(v)) {
      const std::size_t w = model.other_end(me, v);
      Rational cand = *best[v] + model.edge(me).length();
      if (!best[w] || cand < *best[w]) best[w] = std::move(cand);
    }
  }
  throw Error(Errc::InternalGeometry, "target unreachable in a connected graph");
}

}  // namespace tdl
