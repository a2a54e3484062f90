#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "tdl/divisor.hpp"
#include "tdl/errors.hpp"
#include "tdl/graph.hpp"
#include "tdl/model.hpp"
#include "tdl/rank.hpp"
#include "tdl/transform.hpp"
#include "tdl/workspace.hpp"

namespace tdl::testing {

inline Workspace fixture(const std::string& name) {
  return load_workspace(std::string(TDL_FIXTURE_DIR) + "/" + name + ".json");
}

/// The error code thrown by `f`, or nullopt when it returns normally.
template <class F>
std::optional<Errc> error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline PointRef pt(const Workspace& ws, const std::string& name) { return ws.resolve_point(name); }

inline std::vector<PointRef> pts(const Workspace& ws, std::initializer_list<const char*> names) {
  std::vector<PointRef> out;
  for (const char* n : names) out.push_back(ws.resolve_point(n));
  return out;
}

inline int uniform(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

struct GraphShape {
  int max_vertices = 6;
  int max_edges = 9;
  int max_genus = 100;
  int max_denominator = 12;
  int max_length_numerator = 24;  // lengths are p/q with p <= this
};

inline MetricGraph random_graph(std::mt19937& rng, const GraphShape& shape = {}) {
  const int n = uniform(rng, 2, shape.max_vertices);
  const int max_m = std::min(shape.max_edges, n - 1 + shape.max_genus);
  const int m = uniform(rng, n - 1, max_m);
  RawGraph raw;
  for (int i = 1; i <= n; ++i) raw.vertices.push_back("w" + std::to_string(i));
  auto length = [&] {
    const int q = uniform(rng, 1, shape.max_denominator);
    const int p = uniform(rng, 1, std::min(shape.max_length_numerator, 2 * q));
    return Rational(p, q);
  };
  int id = 0;
  auto add = [&](int a, int b) {
    raw.edges.push_back(RawEdge{"e" + std::to_string(++id), raw.vertices[a], raw.vertices[b], length()});
  };
  for (int i = 1; i < n; ++i) add(i, uniform(rng, 0, i - 1));
  while (id < m) {
    const int a = uniform(rng, 0, n - 1);
    const int b = uniform(rng, 0, n - 1);
    if (a != b) add(a, b);
  }
  return MetricGraph::validate(raw);
}

/// Graph with every edge of length 1.
inline MetricGraph random_unit_graph(std::mt19937& rng, int max_vertices, int max_edges) {
  GraphShape shape;
  shape.max_vertices = max_vertices;
  shape.max_edges = max_edges;
  shape.max_denominator = 1;
  shape.max_length_numerator = 1;
  return random_graph(rng, shape);
}

/// Vertex with probability 1/2, otherwise an interior point at a multiple of
/// length/steps.
inline PointRef random_point(std::mt19937& rng, const MetricGraph& g, int steps = 4) {
  if (uniform(rng, 0, 1) == 0) return PointRef::vertex(static_cast<std::size_t>(uniform(rng, 0, int(g.vertex_count()) - 1)));
  const auto e = static_cast<std::size_t>(uniform(rng, 0, int(g.edge_count()) - 1));
  const int k = uniform(rng, 1, steps - 1);
  return PointRef::on_edge(g, e, g.edge(e).length * Rational(k, steps));
}

inline Divisor random_effective(std::mt19937& rng, const MetricGraph& g, int degree, int steps = 4) {
  Divisor d;
  for (int i = 0; i < degree; ++i) d.add(random_point(rng, g, steps), 1);
  return d;
}

/// Degree exactly `degree`, possibly with negative coefficients.
inline Divisor random_divisor(std::mt19937& rng, const MetricGraph& g, int degree, int negatives, int steps = 4) {
  Divisor d = random_effective(rng, g, degree + negatives, steps);
  for (int i = 0; i < negatives; ++i) d.add(random_point(rng, g, steps), -1);
  return d;
}

inline std::vector<PointRef> all_vertices(const MetricGraph& g) {
  std::vector<PointRef> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) out.push_back(PointRef::vertex(v));
  return out;
}

// ---------------------------------------------------------------------------
// Independent oracles

/// Shortest distance using only the base graph: Floyd-Warshall between
/// vertices plus the offsets of the two points.
inline Rational distance_oracle(const MetricGraph& g, const PointRef& p, const PointRef& q) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::optional<Rational>>> d(n, std::vector<std::optional<Rational>>(n));
  for (std::size_t v = 0; v < n; ++v) d[v][v] = Rational(0);
  for (const auto& e : g.edges()) {
    for (auto [a, b] : {std::pair{e.lo, e.hi}, std::pair{e.hi, e.lo}}) {
      if (!d[a][b] || e.length < *d[a][b]) d[a][b] = e.length;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (d[i][k] && d[k][j] && (!d[i][j] || *d[i][k] + *d[k][j] < *d[i][j])) d[i][j] = *d[i][k] + *d[k][j];
      }
    }
  }
  // Each point as a list of (vertex, distance to it).
  auto anchors = [&](const PointRef& x) {
    std::vector<std::pair<std::size_t, Rational>> out;
    if (x.is_vertex()) {
      out.emplace_back(x.vertex_index(), Rational(0));
    } else {
      const Edge& e = g.edge(x.edge_index());
      out.emplace_back(e.lo, x.offset());
      out.emplace_back(e.hi, e.length - x.offset());
    }
    return out;
  };
  std::optional<Rational> best;
  if (!p.is_vertex() && !q.is_vertex() && p.edge_index() == q.edge_index()) best = abs(p.offset() - q.offset());
  for (const auto& [a, da] : anchors(p)) {
    for (const auto& [b, db] : anchors(q)) {
      const Rational total = da + *d[a][b] + db;
      if (!best || total < *best) best = total;
    }
  }
  return *best;
}

/// Reducedness by exhaustive search: D (effective away from v0) fails to be
/// v0-reduced iff some nonempty set Y of model vertices avoiding v0 has
/// D(y) >= #(edges from y leaving Y) at every y in Y.
inline bool reduced_oracle(const MetricGraph& g, const Divisor& d, const PointRef& v0) {
  std::vector<PointRef> marks = d.support();
  marks.push_back(v0);
  const RefinedModel m(g, marks);
  const std::size_t n = m.vertex_count();
  const std::size_t root = m.vertex_of(v0);
  for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
    if (mask >> root & 1) continue;
    bool saturated = true;
    for (std::size_t y = 0; y < n && saturated; ++y) {
      if (!(mask >> y & 1)) continue;
      long long out = 0;
      for (std::size_t me : m.incident(y)) out += (mask >> m.other_end(me, y) & 1) ? 0 : 1;
      saturated = d[m.point(y)] >= out;
    }
    if (saturated) return false;
  }
  return true;
}

/// A homeomorphic unit-length graph carrying the divisor: scale every length
/// by the common denominator of lengths and support offsets, then cut every
/// edge at the integers.
struct UnitCopy {
  MetricGraph graph;
  Divisor divisor;
  std::function<PointRef(const PointRef&)> map;
};

inline UnitCopy unit_copy(const MetricGraph& g, const Divisor& d) {
  mpz_class den = 1;
  for (const auto& e : g.edges()) den = lcm(den, e.length.raw().get_den());
  for (const auto& [p, k] : d) {
    if (!p.is_vertex()) den = lcm(den, p.offset().raw().get_den());
  }
  Rescale scale;
  const Rational factor(den.get_si());
  for (const auto& e : g.edges()) scale.factors[e.id] = factor;
  Transformed scaled = transform(g, scale);
  Subdivide cuts;
  for (const auto& e : scaled.graph.edges()) {
    const long long len = e.length.raw().get_num().get_si();
    for (long long k = 1; k < len; ++k) cuts.cuts[e.id].push_back(Rational(k));
  }
  Transformed unit = transform(scaled.graph, cuts);
  auto map = [s = scaled.map, u = unit.map](const PointRef& p) { return u(s(p)); };
  Divisor out;
  for (const auto& [p, k] : d) out.add(map(p), k);
  return UnitCopy{std::move(unit.graph), std::move(out), map};
}

inline long long total_units(const MetricGraph& g, const Divisor& d) {
  mpz_class den = 1;
  for (const auto& e : g.edges()) den = lcm(den, e.length.raw().get_den());
  for (const auto& [p, k] : d) {
    if (!p.is_vertex()) den = lcm(den, p.offset().raw().get_den());
  }
  mpq_class total = 0;
  for (const auto& e : g.edges()) total += e.length.raw() * den;
  return mpz_class(total.get_num() / total.get_den()).get_si();
}

/// Metric rank through the finite route.
inline int rank_oracle(const MetricGraph& g, const Divisor& d) {
  const UnitCopy u = unit_copy(g, d);
  return fg_rank(u.graph, u.divisor);
}

}  // namespace tdl::testing
