#include "tdl/rds.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <set>

#include "tdl/errors.hpp"
#include "tdl/reduction.hpp"

namespace tdl {

namespace {

using Mask = std::uint64_t;

std::vector<PointRef> dedupe(const std::vector<PointRef>& points) {
  std::set<PointRef> s(points.begin(), points.end());
  return {s.begin(), s.end()};
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

/// Checks a vertex trace W: every component of the complement (induced on the
/// remaining model vertices) needs a vertex with two or more edges into W.
/// Returns the certificates, or nullopt when W is not special.
std::optional<std::vector<ComplementCertificate>> certify(const RefinedModel& model, const std::vector<bool>& in_w) {
  const std::size_t n = model.vertex_count();
  std::vector<bool> seen(n, false);
  std::vector<ComplementCertificate> report;
  for (std::size_t root = 0; root < n; ++root) {
    if (in_w[root] || seen[root]) continue;
    std::optional<ComplementCertificate> best;
    std::vector<std::size_t> stack{root};
    seen[root] = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      int into = 0;
      for (std::size_t me : model.incident(v)) {
        const std::size_t w = model.other_end(me, v);
        if (in_w[w]) {
          ++into;
        } else if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
      if (into >= 2 && (!best || v < best->vertex)) best = ComplementCertificate{v, into};
    }
    if (!best) return std::nullopt;
    report.push_back(*best);
  }
  return report;
}

struct Search {
  ModelPtr model;
  std::vector<SpecialWitness> found;
};

Search search(const MetricGraph& g, const std::vector<PointRef>& a, const SearchOptions& options) {
  const std::vector<PointRef> avoid = dedupe(a);
  if (avoid.empty()) throw Error(Errc::EmptySet, "the avoided point set is empty");
  std::vector<PointRef> marks = avoid;
  if (options.containing) marks.push_back(*options.containing);
  Search out{refine(g, marks), {}};
  const RefinedModel& model = *out.model;

  std::vector<bool> avoided(model.vertex_count(), false);
  for (const auto& p : avoid) avoided[model.vertex_of(p)] = true;
  std::optional<std::size_t> required;
  if (options.containing) {
    required = model.vertex_of(*options.containing);
    if (avoided[*required]) return out;
  }

  std::vector<std::size_t> free_vertices;
  for (std::size_t v = 0; v < model.vertex_count(); ++v) {
    if (!avoided[v]) free_vertices.push_back(v);
  }
  const std::size_t cap = std::min<std::size_t>(options.free_vertex_cap, 63);
  if (free_vertices.size() > cap) {
    throw Error(Errc::SearchCapExceeded, std::to_string(free_vertices.size()) + " free vertices exceed the cap of " +
                                             std::to_string(cap));
  }
  const std::size_t f = free_vertices.size();
  std::vector<std::size_t> slot(model.vertex_count(), f);
  for (std::size_t k = 0; k < f; ++k) slot[free_vertices[k]] = k;
  std::vector<Mask> nbr(f, 0);
  for (std::size_t k = 0; k < f; ++k) {
    for (std::size_t me : model.incident(free_vertices[k])) {
      const std::size_t w = slot[model.other_end(me, free_vertices[k])];
      if (w < f) nbr[k] |= Mask{1} << w;
    }
  }
  const Mask required_bit = required ? Mask{1} << slot[*required] : 0;

  bool done = false;
  std::vector<bool> in_w(model.vertex_count(), false);
  auto consider = [&](Mask sub) {
    if ((sub & required_bit) != required_bit) return;
    std::fill(in_w.begin(), in_w.end(), false);
    std::vector<std::size_t> w;
    for (Mask rest = sub; rest; rest &= rest - 1) {
      const std::size_t v = free_vertices[static_cast<std::size_t>(std::countr_zero(rest))];
      in_w[v] = true;
      w.push_back(v);
    }
    auto report = certify(model, in_w);
    if (!report) return;
    out.found.push_back(SpecialWitness{std::move(w), OpenRegion(out.model, in_w), std::move(*report)});
    if (!options.enumerate_all) done = true;
  };

  // Connected induced subsets, each generated once from its smallest member.
  auto extend = [&](auto& self, Mask sub, Mask closed, Mask ext, Mask above) -> void {
    consider(sub);
    while (ext && !done) {
      const Mask w = ext & (~ext + 1);
      ext &= ~w;
      const std::size_t k = static_cast<std::size_t>(std::countr_zero(w));
      self(self, sub | w, closed | nbr[k] | w, ext | (nbr[k] & ~closed & above), above);
    }
  };
  for (std::size_t root = 0; root < f && !done; ++root) {
    const Mask bit = Mask{1} << root;
    const Mask above = ~((bit << 1) - 1);
    extend(extend, bit, nbr[root] | bit, nbr[root] & above, above);
  }
  return out;
}

}  // namespace

bool is_special_region(const OpenRegion& region) {
  if (region.empty()) throw Error(Errc::EmptyRegion, "region has no points");
  if (!region.is_connected()) throw Error(Errc::NotConnected, "region is not connected");
  if (region.is_whole_graph()) return true;

  bool special = true;
  for (const auto& component : region.complement().components()) {
    bool certified = false;
    for (std::size_t v : component.boundary()) certified = certified || component.outdeg(v) >= 2;
    special = special && certified;
  }

  const RefinedModel& model = region.model();
  Divisor boundary;
  for (std::size_t v : region.boundary()) boundary.add(model.point(v), 1);
  const PointRef inside = model.point(region.interior_vertices().front());
  const bool reduced = dhar(model.base(), boundary, inside).output.empty();
  if (reduced != special) {
    throw Error(Errc::InternalGeometry, "out-degree test and burning test disagree on a region");
  }
  return special;
}

std::vector<SpecialWitness> special_avoiding(const MetricGraph& g, const std::vector<PointRef>& a,
                                             const SearchOptions& options) {
  return search(g, a, options).found;
}

Divisor witness_divisor(const SpecialWitness& witness) {
  const OpenRegion& region = witness.region;
  const RefinedModel& model = region.model();
  const MetricGraph& g = model.base();
  if (region.empty() || region.is_whole_graph() || !is_special_region(region)) {
    throw Error(Errc::InvalidWitness, "witness region is not a proper special open set");
  }

  const std::size_t n = model.vertex_count();
  const auto boundary_list = region.boundary();
  std::vector<bool> on_boundary(n, false);
  Divisor d;
  for (std::size_t v : boundary_list) {
    on_boundary[v] = true;
    d.add(model.point(v), 1);
  }

  // Pieces of the graph cut at the boundary, other than the region, are
  // grouped by the union-find of their inner vertices; boundary vertices are
  // duplicated per piece so cycles through the boundary count correctly.
  UnionFind pieces(n);
  for (std::size_t me = 0; me < model.edge_count(); ++me) {
    const ModelEdge& m = model.edge(me);
    const bool inner_u = !region.is_interior(m.u) && !on_boundary[m.u];
    const bool inner_v = !region.is_interior(m.v) && !on_boundary[m.v];
    if (inner_u && inner_v) pieces.unite(m.u, m.v);
  }
  // Spanning forest per piece over the closure of the piece; nodes are inner
  // vertices and (piece, boundary vertex) pairs.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> node_of;
  auto node = [&](std::size_t piece, std::size_t v) {
    const auto key = std::make_pair(piece, v);
    const auto it = node_of.find(key);
    if (it != node_of.end()) return it->second;
    const std::size_t id = node_of.size();
    node_of.emplace(key, id);
    return id;
  };
  UnionFind forest(2 * model.edge_count() + n + 1);
  for (std::size_t me = 0; me < model.edge_count(); ++me) {
    const ModelEdge& m = model.edge(me);
    if (region.part(me) != OpenRegion::Part::None) continue;
    const bool inner_u = !on_boundary[m.u];
    const bool inner_v = !on_boundary[m.v];
    if (!inner_u && !inner_v) continue;  // an open edge between two boundary points is its own tree
    const std::size_t piece = pieces.find(inner_u ? m.u : m.v);
    const std::size_t a = node(piece, m.u);
    const std::size_t b = node(piece, m.v);
    if (!forest.unite(a, b)) d.add(model.point_along(me, m.u, m.length() / Rational(2)), 1);
  }

  for (const auto& [p, k] : d) {
    if (region.contains(p)) throw Error(Errc::InvalidWitness, "witness divisor meets the region");
  }
  const PointRef inside = model.point(region.interior_vertices().front());
  if (!dhar(g, d, inside).output.empty()) {
    throw Error(Errc::InvalidWitness, "witness divisor is not reduced with respect to the region");
  }
  return d;
}

RdsVerdict is_rank_determining(const MetricGraph& g, const std::vector<PointRef>& a, std::size_t free_vertex_cap) {
  SearchOptions options;
  options.free_vertex_cap = free_vertex_cap;
  auto found = special_avoiding(g, a, options);
  RdsVerdict verdict;
  verdict.is_rds = found.empty();
  if (!found.empty()) {
    verdict.witness_divisor = witness_divisor(found.front());
    verdict.witness = std::move(found.front());
  }
  return verdict;
}

ClosedLocus l_closure(const MetricGraph& g, const std::vector<PointRef>& a, std::size_t free_vertex_cap) {
  SearchOptions options;
  options.enumerate_all = true;
  options.free_vertex_cap = free_vertex_cap;
  const Search result = search(g, a, options);
  std::vector<bool> covered(result.model->vertex_count(), false);
  for (const auto& w : result.found) {
    for (std::size_t v : w.vertices) covered[v] = true;
  }
  std::vector<std::size_t> outside;
  for (std::size_t v = 0; v < covered.size(); ++v) {
    if (!covered[v]) outside.push_back(v);
  }
  return ClosedLocus::induced(result.model, outside);
}

MinimalityVerdict is_minimal_rds(const MetricGraph& g, const std::vector<PointRef>& a, std::size_t free_vertex_cap) {
  const std::vector<PointRef> set = dedupe(a);
  if (!is_rank_determining(g, set, free_vertex_cap).is_rds) {
    throw Error(Errc::NotRds, "the set is not rank-determining");
  }
  MinimalityVerdict verdict;
  if (set.size() == 1) {
    // The empty set is never rank-determining.
    verdict.minimal = true;
    return verdict;
  }
  for (const auto& v : set) {
    std::vector<PointRef> rest;
    for (const auto& p : set) {
      if (p != v) rest.push_back(p);
    }
    SearchOptions options;
    options.containing = v;
    options.free_vertex_cap = free_vertex_cap;
    auto found = special_avoiding(g, rest, options);
    if (found.empty()) {
      verdict.removable.push_back(v);
    } else {
      verdict.witnesses.emplace_back(v, std::move(found.front()));
    }
  }
  verdict.minimal = verdict.removable.empty();
  return verdict;
}

std::vector<PointRef> construct_rds_spanning(const MetricGraph& g, const SpanningOptions& options) {
  std::vector<bool> in_tree(g.edge_count(), false);
  if (options.tree) {
    UnionFind uf(g.vertex_count());
    std::set<std::size_t> chosen;
    for (const auto& id : *options.tree) {
      const auto e = g.find_edge(id);
      if (!e) throw Error(Errc::UnknownId, "no edge named '" + id + "'");
      if (!chosen.insert(*e).second) throw Error(Errc::NotSpanningTree, "edge '" + id + "' listed twice");
      if (!uf.unite(g.edge(*e).lo, g.edge(*e).hi)) throw Error(Errc::NotSpanningTree, "tree edges form a cycle");
      in_tree[*e] = true;
    }
    if (chosen.size() + 1 != g.vertex_count()) throw Error(Errc::NotSpanningTree, "tree does not span the graph");
  } else {
    UnionFind uf(g.vertex_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) in_tree[e] = uf.unite(g.edge(e).lo, g.edge(e).hi);
  }

  const PointRef base = options.base.value_or(PointRef::vertex(0));
  if (!base.is_vertex() && !in_tree.at(base.edge_index())) {
    throw Error(Errc::InvalidArgument, describe(g, base) + " does not lie on the spanning tree");
  }

  std::vector<PointRef> out{base};
  std::vector<std::size_t> off_tree;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (!in_tree[e]) off_tree.push_back(e);
  }
  if (options.cycle_points) {
    std::set<std::size_t> covered;
    for (const auto& p : *options.cycle_points) {
      if (p.is_vertex() || in_tree[p.edge_index()] || !covered.insert(p.edge_index()).second) {
        throw Error(Errc::InvalidArgument, describe(g, p) + " is not a fresh interior point of a non-tree edge");
      }
      out.push_back(p);
    }
    if (covered.size() != off_tree.size()) {
      throw Error(Errc::InvalidArgument, "need exactly one point on every non-tree edge");
    }
  } else {
    for (std::size_t e : off_tree) out.push_back(PointRef::on_edge(g, e, g.edge(e).length / Rational(2)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<PointRef>> minimal_rds_search(const MetricGraph& g, const std::vector<PointRef>& pool,
                                                      std::size_t max_size, std::size_t free_vertex_cap,
                                                      std::size_t pool_cap) {
  const std::vector<PointRef> points = dedupe(pool);
  if (points.size() > pool_cap) {
    throw Error(Errc::SearchCapExceeded,
                "pool of " + std::to_string(points.size()) + " points exceeds the cap of " + std::to_string(pool_cap));
  }
  std::vector<std::vector<PointRef>> out;
  const std::size_t limit = std::min(max_size, points.size());
  for (std::size_t size = 1; size <= limit; ++size) {
    std::vector<bool> pick(points.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      std::vector<PointRef> subset;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (pick[i]) subset.push_back(points[i]);
      }
      if (is_rank_determining(g, subset, free_vertex_cap).is_rds &&
          is_minimal_rds(g, subset, free_vertex_cap).minimal) {
        out.push_back(std::move(subset));
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

}  // namespace tdl
