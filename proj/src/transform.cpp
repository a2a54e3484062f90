#include "tdl/transform.hpp"

#include <algorithm>
#include <set>

#include "tdl/errors.hpp"

namespace tdl {

namespace {

Transformed rescale(const MetricGraph& g, const Rescale& spec) {
  std::vector<Rational> factor(g.edge_count(), Rational(1));
  for (const auto& [id, f] : spec.factors) {
    const auto e = g.find_edge(id);
    if (!e) throw Error(Errc::UnknownId, "no edge named '" + id + "'");
    if (f.sign() <= 0) throw Error(Errc::NonpositiveFactor, "factor " + f.str() + " for edge '" + id + "'");
    factor[*e] = f;
  }
  RawGraph raw = g.raw();
  for (std::size_t e = 0; e < raw.edges.size(); ++e) raw.edges[e].length *= factor[e];
  MetricGraph out = MetricGraph::validate(raw);
  // Ids are unchanged, so vertex and edge indices carry over.
  auto map = [out, factor](const PointRef& p) {
    if (p.is_vertex()) return p;
    return PointRef::on_edge(out, p.edge_index(), p.offset() * factor[p.edge_index()]);
  };
  return Transformed{std::move(out), std::move(map)};
}

Transformed subdivide(const MetricGraph& g, const Subdivide& spec) {
  std::vector<std::vector<Rational>> cuts(g.edge_count());
  for (const auto& [id, offsets] : spec.cuts) {
    const auto e = g.find_edge(id);
    if (!e) throw Error(Errc::UnknownId, "no edge named '" + id + "'");
    std::set<Rational> sorted(offsets.begin(), offsets.end());
    for (const auto& x : sorted) {
      if (x.sign() <= 0 || x >= g.edge(*e).length) {
        throw Error(Errc::InvalidPoint, "cut " + x.str() + " is not interior to edge '" + id + "'");
      }
    }
    cuts[*e].assign(sorted.begin(), sorted.end());
  }

  const RawGraph base = g.raw();
  std::set<std::string> vertex_ids(base.vertices.begin(), base.vertices.end());
  std::set<std::string> edge_ids;
  for (const auto& e : g.edges()) edge_ids.insert(e.id);
  auto fresh = [](std::set<std::string>& taken, std::string stem) {
    while (taken.count(stem)) stem += "'";
    taken.insert(stem);
    return stem;
  };

  RawGraph raw;
  raw.vertices = base.vertices;
  // Per old edge: the new edge ids of its pieces and the new vertex ids of its cuts.
  std::vector<std::vector<std::string>> piece_ids(g.edge_count());
  std::vector<std::vector<std::string>> cut_ids(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& old = g.edge(e);
    if (cuts[e].empty()) {
      raw.edges.push_back(RawEdge{old.id, g.vertex_id(old.lo), g.vertex_id(old.hi), old.length});
      piece_ids[e].push_back(old.id);
      continue;
    }
    for (std::size_t k = 0; k < cuts[e].size(); ++k) {
      cut_ids[e].push_back(fresh(vertex_ids, old.id + "~v" + std::to_string(k + 1)));
      raw.vertices.push_back(cut_ids[e].back());
    }
    std::string prev = g.vertex_id(old.lo);
    Rational prev_offset;
    for (std::size_t k = 0; k <= cuts[e].size(); ++k) {
      const bool last = k == cuts[e].size();
      const std::string next = last ? g.vertex_id(old.hi) : cut_ids[e][k];
      const Rational next_offset = last ? old.length : cuts[e][k];
      piece_ids[e].push_back(fresh(edge_ids, old.id + "~" + std::to_string(k + 1)));
      raw.edges.push_back(RawEdge{piece_ids[e].back(), prev, next, next_offset - prev_offset});
      prev = next;
      prev_offset = next_offset;
    }
  }
  MetricGraph out = MetricGraph::validate(raw);

  auto map = [g, out, cuts, piece_ids, cut_ids](const PointRef& p) {
    if (p.is_vertex()) return PointRef::vertex(*out.find_vertex(g.vertex_id(p.vertex_index())));
    const std::size_t e = p.edge_index();
    const auto& c = cuts[e];
    const auto it = std::lower_bound(c.begin(), c.end(), p.offset());
    const auto k = static_cast<std::size_t>(it - c.begin());
    if (it != c.end() && *it == p.offset()) return PointRef::vertex(*out.find_vertex(cut_ids[e][k]));
    const std::size_t piece = *out.find_edge(piece_ids[e][k]);
    const std::string from_id = k == 0 ? g.vertex_id(g.edge(e).lo) : cut_ids[e][k - 1];
    const Rational start = k == 0 ? Rational(0) : c[k - 1];
    return PointRef::along(out, piece, *out.find_vertex(from_id), p.offset() - start);
  };
  return Transformed{std::move(out), std::move(map)};
}

}  // namespace

Transformed transform(const MetricGraph& g, const TransformSpec& spec) {
  if (const auto* r = std::get_if<Rescale>(&spec)) return rescale(g, *r);
  return subdivide(g, std::get<Subdivide>(spec));
}

Subdivide midpoint_subdivision(const MetricGraph& g) {
  Subdivide s;
  for (const auto& e : g.edges()) s.cuts[e.id] = {e.length / Rational(2)};
  return s;
}

}  // namespace tdl
