#include <doctest.h>

#include "support.hpp"
#include "tdl/rank.hpp"

using namespace tdl;
using namespace tdl::testing;

TEST_CASE("rank examples") {
  const Workspace k4 = fixture("k4");
  const Workspace c = fixture("cycle2");
  CHECK(rank(k4.graph, Divisor()).rank == 0);
  CHECK(rank(c.graph, Divisor({{PointRef::vertex(0), 2}})).rank == 1);
  CHECK(rank(k4.graph, k4.divisors.at("K")).rank == 2);
  CHECK(rank(c.graph, c.divisors.at("W1minusP")).rank == -1);
  CHECK(rank(k4.graph, Divisor({{PointRef::vertex(0), -1}})).rank == -1);

  const RankReport r = rank(k4.graph, k4.divisors.at("K"));
  REQUIRE(r.failing_witness);
  CHECK(r.failing_witness->degree() == 3);
  CHECK(!linear_system_nonempty(k4.graph, k4.divisors.at("K") - *r.failing_witness));
}

TEST_CASE("rank with the Riemann-Roch shortcut") {
  const Workspace k4 = fixture("k4");
  RankOptions opts;
  opts.rr_shortcut = true;
  opts.cross_check = true;
  const Divisor big({{PointRef::vertex(0), 3}, {PointRef::vertex(2), 3}});
  CHECK(rank(k4.graph, big, opts).rank == 3);
  CHECK(rank(k4.graph, big).rank == 3);
}

TEST_CASE("vertex sets") {
  const Workspace ws = fixture("fig2");
  CHECK(is_vertex_set(ws.graph, all_vertices(ws.graph)));
  CHECK(!is_vertex_set(ws.graph, pts(ws, {"w1", "w2", "w3"})));
  auto with_v1 = all_vertices(ws.graph);
  with_v1.push_back(pt(ws, "v1"));
  CHECK(is_vertex_set(ws.graph, with_v1));
  CHECK(error_of([&] { rank(ws.graph, ws.divisors.at("D1"), pts(ws, {"w1"})); }) == Errc::InvalidVertexSet);
}

TEST_CASE("restricted rank") {
  const Workspace k4 = fixture("k4");
  const MetricGraph& g = k4.graph;
  const Divisor& kd = k4.divisors.at("K");
  CHECK(restricted_rank(g, kd, all_vertices(g)).rank == rank(g, kd).rank);
  CHECK(error_of([&] { restricted_rank(g, kd, {}); }) == Errc::EmptySet);

  // A single generic point of an edge: the set cannot see the failure of (p).
  const PointRef p = PointRef::on_edge(g, 0, Rational(1, 3));
  const Divisor dp({{p, 1}});
  CHECK(rank(g, dp).rank == 0);
  CHECK(restricted_rank(g, dp, {p}).rank == 1);
  CHECK(rank_oracle(g, dp) == 0);
  CHECK(restricted_rank(g, Divisor({{p, -1}}), {p}).rank == -1);
}

TEST_CASE("Riemann-Roch examples") {
  const Workspace ws = fixture("fig2");
  const RrReport r = rr_verify(ws.graph, ws.divisors.at("D2"));
  CHECK(r.lhs == 3);
  CHECK(r.rhs == 3);
  CHECK(r.equal);

  const RrReport zero = rr_verify(ws.graph, Divisor());
  CHECK(zero.lhs == 1 - ws.graph.genus());
  CHECK(zero.equal);

  const Workspace c = fixture("cycle2");
  const RrReport point = rr_verify(c.graph, c.divisors.at("Dp"));
  CHECK(point.rank == 0);
  CHECK(point.dual_rank == -1);
  CHECK(point.equal);
}

TEST_CASE("finite-graph rank") {
  const Workspace k4 = fixture("k4");
  CHECK(fg_rank(k4.graph, Divisor()) == 0);
  CHECK(fg_rank(k4.graph, k4.divisors.at("K")) == 2);
  CHECK(error_of([&] { fg_rank(fixture("cycle2").graph, fixture("cycle2").divisors.at("Dp")); }) ==
        Errc::NotVertexSupported);
  const MetricGraph stretched =
      MetricGraph::validate(RawGraph{{"w1", "w2"}, {{"e1", "w1", "w2", Rational(2)}, {"e2", "w1", "w2", Rational(1)}}});
  CHECK(error_of([&] { fg_rank(stretched, Divisor()); }) == Errc::NotUnitGraph);
}

TEST_CASE("metric rank equals the rank of a unit refinement") {
  std::mt19937 rng(41);
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    GraphShape shape;
    shape.max_vertices = 4;
    shape.max_edges = 6;
    shape.max_denominator = 2;
    shape.max_length_numerator = 3;
    const MetricGraph g = random_graph(rng, shape);
    const Divisor d = random_divisor(rng, g, uniform(rng, -1, 4), uniform(rng, 0, 1), 2);
    if (total_units(g, d) > 14) continue;
    CHECK_MESSAGE(rank(g, d).rank == rank_oracle(g, d), describe(g, d));
    ++checked;
  }
  CHECK(checked > 30);
}

TEST_CASE("Riemann-Roch on random graphs") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    GraphShape shape;
    shape.max_vertices = 4;
    shape.max_edges = 6;
    shape.max_genus = 3;
    const MetricGraph g = random_graph(rng, shape);
    const int deg = uniform(rng, -1, 2 * g.genus() + 1);
    const Divisor d = random_divisor(rng, g, deg, uniform(rng, 0, 2));
    CHECK_MESSAGE(rr_verify(g, d).equal, describe(g, d));
  }
}
