#include "tdl/reduction.hpp"

#include <algorithm>

#include "tdl/errors.hpp"

namespace tdl {

namespace {

std::vector<PointRef> marks_for(const Divisor& d, const PointRef& v0) {
  std::vector<PointRef> marks = d.support();
  marks.push_back(v0);
  return marks;
}

void require_effective_away(const MetricGraph& g, const Divisor& d, const PointRef& v0) {
  for (const auto& [p, k] : d) {
    if (k < 0 && p != v0) throw Error(Errc::NotEffective, describe(g, p) + " has " + std::to_string(k) + " chips");
  }
}

/// Number of model edges at `v` whose other end lies in `region`.
int exits_into(const RefinedModel& model, const std::vector<bool>& region, std::size_t v) {
  int count = 0;
  for (std::size_t me : model.incident(v)) count += region[model.other_end(me, v)] ? 1 : 0;
  return count;
}

}  // namespace

DharOutcome dhar(const MetricGraph& g, const Divisor& d, const PointRef& v0) {
  require_effective_away(g, d, v0);
  const ModelPtr model = refine(g, marks_for(d, v0));
  const std::size_t n = model->vertex_count();
  const std::size_t base = model->vertex_of(v0);

  std::vector<long long> chips(n, 0);
  std::vector<bool> in_s(n, false);
  std::size_t remaining = 0;
  for (const auto& [p, k] : d) {
    const std::size_t mv = model->vertex_of(p);
    chips[mv] = k;
    if (mv != base) {
      in_s[mv] = true;
      ++remaining;
    }
  }

  std::vector<std::vector<PointRef>> layers;
  OpenRegion region = component_region(model, in_s, base);
  while (remaining > 0) {
    std::vector<std::size_t> burnt;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_s[v]) continue;
      const int out = exits_into(*model, region.interior_mask(), v);
      if (out > 0 && chips[v] < out) burnt.push_back(v);
    }
    if (burnt.empty()) break;
    std::vector<PointRef> layer;
    for (std::size_t v : burnt) {
      in_s[v] = false;
      layer.push_back(model->point(v));
    }
    remaining -= burnt.size();
    layers.push_back(std::move(layer));
    region = component_region(model, in_s, base);
  }

  std::vector<PointRef> output;
  for (std::size_t v = 0; v < n; ++v) {
    if (in_s[v]) output.push_back(model->point(v));
  }
  return DharOutcome{std::move(output), std::move(layers), std::move(region)};
}

bool is_reduced(const MetricGraph& g, const Divisor& d, const PointRef& v0) {
  if (!d.is_effective_away_from(v0)) return false;
  return dhar(g, d, v0).output.empty();
}

MoveOutcome move_step(const MetricGraph& g, const Divisor& d, const std::vector<PointRef>& s, const PointRef& v0,
                      const Rational& t) {
  if (t.sign() <= 0 || t > Rational(1)) throw Error(Errc::InvalidArgument, "move parameter t must lie in (0, 1]");
  if (s.empty()) throw Error(Errc::InvalidArgument, "move needs a nonempty saturated set");
  require_effective_away(g, d, v0);

  const ModelPtr model = refine(g, marks_for(d, v0));
  const std::size_t base = model->vertex_of(v0);
  std::vector<bool> blocked(model->vertex_count(), false);
  for (const auto& p : s) {
    if (p == v0 || d[p] <= 0) {
      throw Error(Errc::InvalidArgument, describe(g, p) + " is not a support point away from the base point");
    }
    blocked[model->vertex_of(p)] = true;
  }
  const OpenRegion region = component_region(model, blocked, base);
  const auto& free = region.interior_mask();

  MoveOutcome outcome;
  outcome.result = d;
  for (ClosedLocus& component : region.complement().components()) {
    ComponentMove move{component, Rational(0), Rational(0), {}, {}, {}};

    struct Direction {
      std::size_t from;       // model vertex
      std::size_t base_edge;
      Rational start;         // offset of `from` along the base edge
      bool toward_hi;
      Rational reach;
    };
    std::vector<Direction> directions;

    for (std::size_t v : component.boundary()) {
      const int out = component.outdeg(v);
      if (d[model->point(v)] < out) {
        throw Error(Errc::NotSaturated, describe(g, model->point(v)) + " holds fewer chips than its out-degree");
      }
      move.debits.emplace_back(model->point(v), out);
      for (std::size_t me : model->incident(v)) {
        if (component.has_edge(me)) continue;
        const ModelEdge& m = model->edge(me);
        const bool toward_hi = m.u == v;
        Rational start = toward_hi ? m.from : m.to;
        const Edge& be = g.edge(m.base_edge);
        // Walk model pieces of this base edge until a vertex of the graph or
        // the base point; everything passed must lie in the free region.
        std::size_t cur_edge = me;
        std::size_t cur_vertex = v;
        Rational stop;
        for (;;) {
          const std::size_t next = model->other_end(cur_edge, cur_vertex);
          const ModelEdge& piece = model->edge(cur_edge);
          if (!free[next]) {
            throw Error(Errc::InternalGeometry, "chip path from " + describe(g, model->point(v)) +
                                                    " meets the complement before a vertex");
          }
          if (model->is_base_vertex(next) || next == base) {
            stop = toward_hi ? piece.to : piece.from;
            break;
          }
          // `next` is a mark of degree 2; continue along the same base edge.
          const auto& inc = model->incident(next);
          cur_edge = inc[0] == cur_edge ? inc[1] : inc[0];
          cur_vertex = next;
        }
        Rational reach = toward_hi ? stop - start : start - stop;
        if (reach.sign() <= 0 || reach > be.length) {
          throw Error(Errc::InternalGeometry, "nonpositive travel distance");
        }
        directions.push_back(Direction{v, m.base_edge, std::move(start), toward_hi, std::move(reach)});
      }
    }

    move.reach = directions.front().reach;
    for (const auto& dir : directions) move.reach = min(move.reach, dir.reach);
    move.distance = t * move.reach;
    for (const auto& dir : directions) {
      const Rational offset = dir.toward_hi ? dir.start + move.distance : dir.start - move.distance;
      const PointRef landing = PointRef::on_edge(g, dir.base_edge, offset);
      move.landings.add(landing, 1);
      move.swept.push_back(SweptSegment{model->point(dir.from), landing, dir.base_edge});
    }
    for (const auto& [p, k] : move.debits) outcome.result.add(p, -k);
    outcome.result += move.landings;
    outcome.components.push_back(std::move(move));
  }
  return outcome;
}

Reduction reduce_effective(const MetricGraph& g, const Divisor& d, const PointRef& v0, const ReduceOptions& options) {
  require_effective_away(g, d, v0);
  Reduction out{d, {}};
  if (options.record_trace) out.trace.iterates.push_back(d);
  for (;;) {
    DharOutcome burn = dhar(g, out.divisor, v0);
    if (burn.output.empty()) {
      if (options.record_trace) out.trace.dhar_runs.push_back(std::move(burn));
      return out;
    }
    if (out.trace.iterations >= options.iteration_cap) {
      throw Error(Errc::IterationCapExceeded,
                  "reduction did not finish within " + std::to_string(options.iteration_cap) + " moves");
    }
    MoveOutcome move = move_step(g, out.divisor, burn.output, v0);
    out.divisor = move.result;
    ++out.trace.iterations;
    if (options.record_trace) {
      out.trace.dhar_runs.push_back(std::move(burn));
      out.trace.moves.push_back(std::move(move));
      out.trace.iterates.push_back(out.divisor);
    }
  }
}

ReduceOrEmpty reduce_or_empty(const MetricGraph& g, const Divisor& d, const PointRef& v0,
                              const ReduceOptions& options) {
  ReduceOptions quiet = options;
  quiet.record_trace = false;
  Divisor current = d.positive_part();
  for (const auto& [q, k] : d.negative_part()) {
    current = reduce_effective(g, current, q, quiet).divisor;
    if (current[q] < k) return ReduceOrEmpty{std::nullopt, EmptyCertificate{q, current[q], k}};
    current.add(q, -k);
  }
  return ReduceOrEmpty{reduce_effective(g, current, v0, quiet).divisor, std::nullopt};
}

SupportLocus support_locus(const MetricGraph& g, const Divisor& d, const ReduceOptions& options) {
  ReduceOptions quiet = options;
  quiet.record_trace = false;
  const ReduceOrEmpty first = reduce_or_empty(g, d, PointRef::vertex(0), quiet);
  if (first.empty()) throw Error(Errc::EmptySystem, "the linear system of " + describe(g, d) + " is empty");

  // Vertices w whose w-reduced representative has no chip at w seed the regions.
  std::vector<std::pair<std::size_t, Divisor>> seeds;
  std::vector<PointRef> marks;
  for (std::size_t w = 0; w < g.vertex_count(); ++w) {
    const PointRef pw = PointRef::vertex(w);
    Divisor reduced = reduce_effective(g, *first.reduced, pw, quiet).divisor;
    if (reduced[pw] > 0) continue;
    for (const auto& p : reduced.support()) marks.push_back(p);
    seeds.emplace_back(w, std::move(reduced));
  }
  const ModelPtr model = refine(g, marks);

  std::vector<OpenRegion> regions;
  for (const auto& [w, reduced] : seeds) {
    std::vector<bool> blocked(model->vertex_count(), false);
    for (const auto& p : reduced.support()) blocked[model->vertex_of(p)] = true;
    OpenRegion region = component_region(model, blocked, w);
    const auto same = std::find_if(regions.begin(), regions.end(),
                                   [&](const OpenRegion& r) { return r.is_interior(w); });
    if (same == regions.end()) {
      regions.push_back(std::move(region));
    } else if (!(*same == region)) {
      throw Error(Errc::InternalGeometry, "overlapping complement regions of a linear system differ");
    }
  }

  std::vector<bool> vertices(model->vertex_count(), true);
  std::vector<bool> edges(model->edge_count(), true);
  for (const auto& r : regions) {
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      if (r.is_interior(v)) vertices[v] = false;
    }
    for (std::size_t me = 0; me < edges.size(); ++me) {
      if (r.part(me) != OpenRegion::Part::None) edges[me] = false;
    }
  }
  return SupportLocus{ClosedLocus(model, std::move(vertices), std::move(edges)), std::move(regions)};
}

}  // namespace tdl
