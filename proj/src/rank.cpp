#include "tdl/rank.hpp"

#include <algorithm>
#include <set>

#include "tdl/errors.hpp"

namespace tdl {

namespace {

std::vector<PointRef> dedupe(const std::vector<PointRef>& points) {
  std::set<PointRef> s(points.begin(), points.end());
  return {s.begin(), s.end()};
}

/// Breadth-first over multisets of `test` in canonical order, one level per
/// degree. Each node holds an effective divisor equivalent to D - E.
RankReport rank_over(const MetricGraph& g, const Divisor& d, const std::vector<PointRef>& test,
                     const RankOptions& options) {
  ReduceOptions quiet = options.reduce;
  quiet.record_trace = false;

  RankReport report;
  const ReduceOrEmpty start = reduce_or_empty(g, d, test.front(), quiet);
  report.levels_checked = 1;
  if (start.empty()) {
    report.rank = -1;
    report.failing_witness = Divisor();
    return report;
  }

  struct Node {
    Divisor current;
    std::size_t first;
    Divisor removed;
  };
  std::vector<Node> frontier{Node{*start.reduced, 0, Divisor()}};
  for (long long level = 1;; ++level) {
    if (level > d.degree()) {
      report.rank = static_cast<int>(level - 1);
      report.failing_witness = Divisor({{test.front(), level}});
      return report;
    }
    std::vector<Node> next;
    for (const Node& node : frontier) {
      for (std::size_t i = node.first; i < test.size(); ++i) {
        const PointRef& q = test[i];
        Divisor reduced = reduce_effective(g, node.current, q, quiet).divisor;
        ++report.levels_checked;
        Divisor removed = node.removed;
        removed.add(q, 1);
        if (reduced[q] < 1) {
          report.rank = static_cast<int>(level - 1);
          report.failing_witness = std::move(removed);
          return report;
        }
        reduced.add(q, -1);
        next.push_back(Node{std::move(reduced), i, std::move(removed)});
      }
    }
    frontier = std::move(next);
  }
}

}  // namespace

std::optional<Divisor> linear_system_nonempty(const MetricGraph& g, const Divisor& d, const RankOptions& options) {
  if (d.degree() < 0) return std::nullopt;
  ReduceOptions quiet = options.reduce;
  quiet.record_trace = false;
  return reduce_or_empty(g, d, PointRef::vertex(0), quiet).reduced;
}

bool is_vertex_set(const MetricGraph& g, const std::vector<PointRef>& points) {
  const std::vector<PointRef> marks = dedupe(points);
  if (marks.empty()) return false;
  std::set<PointRef> chosen(marks.begin(), marks.end());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) != 2 && !chosen.count(PointRef::vertex(v))) return false;
  }
  // Walk every direction out of a chosen point through unchosen points; the
  // walk must end at a different chosen point.
  const RefinedModel model(g, marks);
  std::vector<bool> is_chosen(model.vertex_count(), false);
  for (const auto& p : marks) is_chosen[model.vertex_of(p)] = true;
  for (std::size_t v = 0; v < model.vertex_count(); ++v) {
    if (!is_chosen[v]) continue;
    for (std::size_t me : model.incident(v)) {
      std::size_t cur_edge = me;
      std::size_t cur = model.other_end(me, v);
      while (!is_chosen[cur]) {
        const auto& inc = model.incident(cur);  // unchosen points have degree 2
        cur_edge = inc[0] == cur_edge ? inc[1] : inc[0];
        cur = model.other_end(cur_edge, cur);
      }
      if (cur == v) return false;
    }
  }
  return true;
}

RankReport rank(const MetricGraph& g, const Divisor& d, const RankOptions& options) {
  std::vector<PointRef> omega;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) omega.push_back(PointRef::vertex(v));
  return rank(g, d, omega, options);
}

RankReport rank(const MetricGraph& g, const Divisor& d, const std::vector<PointRef>& base_set,
                const RankOptions& options) {
  if (!is_vertex_set(g, base_set)) throw Error(Errc::InvalidVertexSet, "base set is not a vertex set of the graph");
  const std::vector<PointRef> test = dedupe(base_set);
  const long long deg = d.degree();
  if (options.rr_shortcut && deg > 2LL * g.genus() - 2) {
    RankReport quick;
    quick.rank = static_cast<int>(deg - g.genus());
    if (options.cross_check) {
      const RankReport full = rank_over(g, d, test, options);
      if (full.rank != quick.rank) {
        throw Error(Errc::InternalGeometry, "degree shortcut disagrees with the full rank computation");
      }
      return full;
    }
    return quick;
  }
  return rank_over(g, d, test, options);
}

RankReport restricted_rank(const MetricGraph& g, const Divisor& d, const std::vector<PointRef>& a,
                           const RankOptions& options) {
  if (a.empty()) throw Error(Errc::EmptySet, "restricted rank needs a nonempty point set");
  return rank_over(g, d, dedupe(a), options);
}

RrReport rr_verify(const MetricGraph& g, const Divisor& d, const ReduceOptions& options) {
  RankOptions plain;
  plain.reduce = options;
  plain.reduce.record_trace = false;
  const int r = rank(g, d, plain).rank;
  const int r_dual = rank(g, canonical_divisor(g) - d, plain).rank;
  const long long lhs = static_cast<long long>(r) - r_dual;
  const long long rhs = d.degree() + 1 - g.genus();
  return RrReport{r, r_dual, lhs, rhs, lhs == rhs};
}

// ---------------------------------------------------------------------------
// Finite graphs: integer chip configurations on the vertices.

namespace {

class ChipGraph {
 public:
  explicit ChipGraph(const MetricGraph& g) : n_(g.vertex_count()), mult_(n_ * n_, 0) {
    for (const auto& e : g.edges()) {
      ++mult_[e.lo * n_ + e.hi];
      ++mult_[e.hi * n_ + e.lo];
    }
  }

  std::size_t size() const { return n_; }

  /// q-reduced configuration by repeated burning and firing of the unburnt set.
  void reduce(std::vector<long long>& chips, std::size_t q) const {
    for (;;) {
      std::vector<bool> burnt(n_, false);
      burnt[q] = true;
      bool spread = true;
      while (spread) {
        spread = false;
        for (std::size_t v = 0; v < n_; ++v) {
          if (burnt[v]) continue;
          long long fire_edges = 0;
          for (std::size_t w = 0; w < n_; ++w) fire_edges += burnt[w] ? mult_[v * n_ + w] : 0;
          if (chips[v] < fire_edges) {
            burnt[v] = true;
            spread = true;
          }
        }
      }
      if (std::all_of(burnt.begin(), burnt.end(), [](bool b) { return b; })) return;
      for (std::size_t v = 0; v < n_; ++v) {
        if (burnt[v]) continue;
        for (std::size_t w = 0; w < n_; ++w) {
          if (!burnt[w]) continue;
          chips[v] -= mult_[v * n_ + w];
          chips[w] += mult_[v * n_ + w];
        }
      }
    }
  }

  /// An effective configuration equivalent to `chips`, if any.
  std::optional<std::vector<long long>> effective(const std::vector<long long>& chips) const {
    std::vector<long long> cur(n_);
    for (std::size_t v = 0; v < n_; ++v) cur[v] = std::max(chips[v], 0LL);
    for (std::size_t q = 0; q < n_; ++q) {
      if (chips[q] >= 0) continue;
      reduce(cur, q);
      if (cur[q] < -chips[q]) return std::nullopt;
      cur[q] += chips[q];
    }
    return cur;
  }

 private:
  std::size_t n_;
  std::vector<long long> mult_;
};

}  // namespace

int fg_rank(const MetricGraph& g, const Divisor& d) {
  for (const auto& e : g.edges()) {
    if (e.length != Rational(1)) throw Error(Errc::NotUnitGraph, "edge '" + e.id + "' has length " + e.length.str());
  }
  const ChipGraph graph(g);
  std::vector<long long> chips(graph.size(), 0);
  long long deg = 0;
  for (const auto& [p, k] : d) {
    if (!p.is_vertex()) throw Error(Errc::NotVertexSupported, describe(g, p) + " is not a vertex");
    chips[p.vertex_index()] = k;
    deg += k;
  }
  const auto start = graph.effective(chips);
  if (!start) return -1;

  struct Node {
    std::vector<long long> chips;
    std::size_t first;
  };
  std::vector<Node> frontier{Node{*start, 0}};
  for (long long level = 1; level <= deg; ++level) {
    std::vector<Node> next;
    for (const Node& node : frontier) {
      for (std::size_t q = node.first; q < graph.size(); ++q) {
        std::vector<long long> cur = node.chips;
        graph.reduce(cur, q);
        if (cur[q] < 1) return static_cast<int>(level - 1);
        --cur[q];
        next.push_back(Node{std::move(cur), q});
      }
    }
    frontier = std::move(next);
  }
  return static_cast<int>(deg);
}

}  // namespace tdl
