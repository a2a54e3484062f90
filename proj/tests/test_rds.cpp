#include <doctest.h>

#include "support.hpp"
#include "tdl/rds.hpp"

using namespace tdl;
using namespace tdl::testing;

namespace {

MetricGraph path3() {
  return MetricGraph::validate(
      RawGraph{{"w1", "w2", "w3"}, {{"e1", "w1", "w2", Rational(1)}, {"e2", "w2", "w3", Rational(1, 2)}}});
}

OpenRegion region_of(const ModelPtr& m, const std::vector<std::size_t>& interior) {
  std::vector<bool> mask(m->vertex_count(), false);
  for (std::size_t v : interior) mask[v] = true;
  return OpenRegion(m, mask);
}

}  // namespace

TEST_CASE("special open regions") {
  const Workspace c = fixture("cycle2");
  SUBCASE("circle minus a point") {
    const ModelPtr m = refine(c.graph, {pt(c, "p")});
    const std::size_t p = m->vertex_of(pt(c, "p"));
    std::vector<std::size_t> rest;
    for (std::size_t v = 0; v < m->vertex_count(); ++v) {
      if (v != p) rest.push_back(v);
    }
    CHECK(is_special_region(region_of(m, rest)));
  }
  SUBCASE("circle minus an arc") {
    const ModelPtr m = refine(c.graph, {pt(c, "p")});
    // Interior {w2}: the complement is the closed arc through w1 and p.
    CHECK(!is_special_region(region_of(m, {1})));
  }
  SUBCASE("K4 around w3 and w4") {
    const Workspace k4 = fixture("k4");
    const ModelPtr m = refine(k4.graph, {});
    CHECK(is_special_region(region_of(m, {2, 3})));
    CHECK(!is_special_region(region_of(m, {3})));
  }
  SUBCASE("preconditions") {
    const ModelPtr m = refine(c.graph, {});
    CHECK(error_of([&] { is_special_region(region_of(m, {})); }) == Errc::EmptyRegion);
  }
}

TEST_CASE("special sets avoiding a set") {
  const Workspace c = fixture("cycle2");
  CHECK(special_avoiding(c.graph, c.sets.at("PQ")).empty());
  const auto one = special_avoiding(c.graph, c.sets.at("P"));
  REQUIRE(one.size() == 1);
  CHECK(one[0].region.boundary().size() == 1);
  CHECK(!one[0].region.contains(pt(c, "p")));
  CHECK(one[0].region.contains(pt(c, "q")));

  const Workspace k4 = fixture("k4");
  const auto w = special_avoiding(k4.graph, k4.sets.at("B"));
  REQUIRE(w.size() == 1);
  CHECK(w[0].vertices == std::vector<std::size_t>{2, 3});

  CHECK(error_of([&] { special_avoiding(k4.graph, {}); }) == Errc::EmptySet);
  SearchOptions tiny;
  tiny.free_vertex_cap = 1;
  CHECK(error_of([&] { special_avoiding(k4.graph, k4.sets.at("B"), tiny); }) == Errc::SearchCapExceeded);
}

TEST_CASE("rank-determining verdicts") {
  const Workspace k4 = fixture("k4");
  CHECK(is_rank_determining(k4.graph, k4.sets.at("Omega")).is_rds);
  CHECK(is_rank_determining(k4.graph, k4.sets.at("A")).is_rds);
  const RdsVerdict b = is_rank_determining(k4.graph, k4.sets.at("B"));
  CHECK(!b.is_rds);
  REQUIRE(b.witness_divisor);
  CHECK(*b.witness_divisor == Divisor({{PointRef::vertex(0), 1}, {PointRef::vertex(1), 1}}));
  CHECK(restricted_rank(k4.graph, *b.witness_divisor, k4.sets.at("B")).rank >= 1);
  CHECK(rank(k4.graph, *b.witness_divisor).rank == 0);

  const Workspace ws = fixture("fig2");
  CHECK(is_rank_determining(ws.graph, all_vertices(ws.graph)).is_rds);
  const RdsVerdict v0 = is_rank_determining(ws.graph, pts(ws, {"v0"}));
  CHECK(!v0.is_rds);
  REQUIRE(v0.witness_divisor);
  CHECK(rank(ws.graph, *v0.witness_divisor).rank == 0);
  CHECK(restricted_rank(ws.graph, *v0.witness_divisor, pts(ws, {"v0"})).rank >= 1);

  const Workspace c = fixture("cycle2");
  const RdsVerdict p = is_rank_determining(c.graph, c.sets.at("P"));
  CHECK(!p.is_rds);
  CHECK(*p.witness_divisor == c.divisors.at("Dp"));

  const MetricGraph tree = path3();
  CHECK(is_rank_determining(tree, {PointRef::on_edge(tree, 0, Rational(1, 5))}).is_rds);
  CHECK(is_rank_determining(tree, {PointRef::vertex(2)}).is_rds);
}

TEST_CASE("L closure") {
  const MetricGraph tree = path3();
  const ClosedLocus all = l_closure(tree, {PointRef::vertex(1)});
  for (std::size_t me = 0; me < all.model().edge_count(); ++me) CHECK(all.has_edge(me));

  const Workspace c = fixture("cycle2");
  const ClosedLocus lp = l_closure(c.graph, c.sets.at("P"));
  CHECK(lp.vertices().size() == 1);
  CHECK(lp.contains(pt(c, "p")));
  CHECK(!lp.contains(PointRef::vertex(0)));

  const Workspace k4 = fixture("k4");
  const ClosedLocus lb = l_closure(k4.graph, k4.sets.at("B"));
  CHECK(lb.contains(PointRef::vertex(0)));
  CHECK(lb.contains(PointRef::on_edge(k4.graph, 0, Rational(1, 2))));
  CHECK(!lb.contains(PointRef::vertex(2)));
}

TEST_CASE("minimality") {
  const Workspace k4 = fixture("k4");
  CHECK(is_minimal_rds(k4.graph, k4.sets.at("A")).minimal);

  auto omega_plus = k4.sets.at("Omega");
  const PointRef mid = PointRef::on_edge(k4.graph, 0, Rational(1, 2));
  omega_plus.push_back(mid);
  const MinimalityVerdict v = is_minimal_rds(k4.graph, omega_plus);
  CHECK(!v.minimal);
  CHECK(std::find(v.removable.begin(), v.removable.end(), mid) != v.removable.end());

  const Workspace c = fixture("cycle2");
  CHECK(is_minimal_rds(c.graph, c.sets.at("PQ")).minimal);
  CHECK(error_of([&] { is_minimal_rds(c.graph, c.sets.at("P")); }) == Errc::NotRds);
}

TEST_CASE("spanning-tree construction") {
  const MetricGraph tree = path3();
  CHECK(construct_rds_spanning(tree) == std::vector<PointRef>{PointRef::vertex(0)});

  const Workspace c = fixture("cycle2");
  const auto cyc = construct_rds_spanning(c.graph);
  CHECK(cyc == std::vector<PointRef>{PointRef::vertex(0), PointRef::on_edge(c.graph, 1, Rational(1, 2))});
  CHECK(is_minimal_rds(c.graph, cyc).minimal);

  const Workspace k4 = fixture("k4");
  const auto a = construct_rds_spanning(k4.graph);
  CHECK(a.size() == 4);
  CHECK(is_rank_determining(k4.graph, a).is_rds);
  CHECK(is_minimal_rds(k4.graph, a).minimal);

  SpanningOptions bad;
  bad.tree = std::vector<std::string>{"e1", "e2", "e4"};
  CHECK(error_of([&] { construct_rds_spanning(k4.graph, bad); }) == Errc::NotSpanningTree);
  SpanningOptions custom;
  custom.tree = std::vector<std::string>{"e1", "e2", "e3"};
  custom.base = PointRef::on_edge(k4.graph, 0, Rational(1, 3));
  const auto star = construct_rds_spanning(k4.graph, custom);
  CHECK(star.size() == 4);
  CHECK(is_minimal_rds(k4.graph, star).minimal);
  custom.base = PointRef::on_edge(k4.graph, 5, Rational(1, 3));
  CHECK(error_of([&] { construct_rds_spanning(k4.graph, custom); }) == Errc::InvalidArgument);
}

TEST_CASE("minimal set search") {
  const Workspace c = fixture("cycle2");
  const MetricGraph& g = c.graph;
  const std::vector<PointRef> pool{PointRef::vertex(0), PointRef::vertex(1), PointRef::on_edge(g, 0, Rational(1, 2)),
                                   PointRef::on_edge(g, 1, Rational(1, 2))};
  const auto found = minimal_rds_search(g, pool, 2);
  CHECK(found.size() == 6);
  for (const auto& a : found) CHECK(a.size() == 2);
  CHECK(minimal_rds_search(g, {}, 3).empty());

  const Workspace k4 = fixture("k4");
  const auto triples = minimal_rds_search(k4.graph, k4.sets.at("Omega"), 4);
  CHECK(std::find(triples.begin(), triples.end(), k4.sets.at("A")) != triples.end());
  for (const auto& a : triples) CHECK(a.size() == 3);
}

TEST_CASE("witness divisors realize their regions") {
  std::mt19937 rng(47);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    GraphShape shape;
    shape.max_vertices = 4;
    shape.max_edges = 6;
    const MetricGraph g = random_graph(rng, shape);
    std::vector<PointRef> a{random_point(rng, g)};
    if (uniform(rng, 0, 1)) a.push_back(random_point(rng, g));
    const RdsVerdict v = is_rank_determining(g, a);
    if (v.is_rds) continue;
    ++checked;
    const Divisor& d = *v.witness_divisor;
    CHECK(rank(g, d).rank == 0);
    CHECK(restricted_rank(g, d, a).rank >= 1);
    // The support of |D| is exactly the complement of the region.
    const SupportLocus s = support_locus(g, d);
    const OpenRegion& u = v.witness->region;
    for (std::size_t mv = 0; mv < u.model().vertex_count(); ++mv) {
      CHECK(s.locus.contains(u.model().point(mv)) == !u.contains(u.model().point(mv)));
    }
  }
  CHECK(checked > 10);
}
