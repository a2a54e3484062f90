#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "tdl/cli.hpp"

using namespace tdl;
using namespace tdl::testing;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string fixture_path(const std::string& name) { return std::string(TDL_FIXTURE_DIR) + "/" + name + ".json"; }

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_command(args, out, err);
  return Run{code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("workspace parsing") {
  SUBCASE("minimal file") {
    const Workspace ws = parse_workspace(
        R"({"graph":{"vertices":["a","b"],"edges":[{"id":"e","ends":["a","b"],"length":"1/2"}]},"divisors":{}})");
    CHECK(ws.graph.edge_count() == 1);
    CHECK(ws.divisors.empty());
  }
  SUBCASE("fixtures round-trip byte for byte") {
    for (const char* name : {"fig2", "k4", "cycle2"}) {
      const std::string text = read_file(fixture_path(name));
      CHECK(serialize_workspace(parse_workspace(text)) == text);
    }
  }
  SUBCASE("errors") {
    CHECK(error_of([] {
            parse_workspace(R"({"graph":{"vertices":["a","b"],"edges":[{"id":"e","ends":["a","b"],"length":"0"}]}})");
          }) == Errc::NonpositiveLength);
    CHECK(error_of([] {
            parse_workspace(R"({"graph":{"vertices":["a","b"],"edges":[{"id":"e","ends":["a","b"],"length":0.5}]}})");
          }) == Errc::ParseError);
    CHECK(error_of([] { parse_workspace("{"); }) == Errc::ParseError);
    CHECK(error_of([] { parse_workspace(R"({"graph":{"vertices":[]}})"); }) == Errc::ParseError);
    try {
      parse_workspace(R"({"graph":{"vertices":["a","b"],"edges":[{"id":"e","ends":["a"],"length":1}]}})");
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("/graph/edges/0/ends") != std::string::npos);
    }
  }
  SUBCASE("random workspaces round-trip") {
    std::mt19937 rng(53);
    for (int i = 0; i < 30; ++i) {
      Workspace ws{random_graph(rng), {}, {}, {}};
      ws.divisors["D"] = random_divisor(rng, ws.graph, 3, 1);
      ws.points.insert_or_assign("p", random_point(rng, ws.graph));
      ws.sets["A"] = {random_point(rng, ws.graph), random_point(rng, ws.graph)};
      const std::string text = serialize_workspace(ws);
      CHECK(parse_workspace(text) == ws);
      CHECK(serialize_workspace(parse_workspace(text)) == text);
    }
  }
}

TEST_CASE("command line") {
  const std::string fig2 = fixture_path("fig2");
  const std::string k4 = fixture_path("k4");

  SUBCASE("dhar") {
    const Run r = run({"dhar", "--input", fig2, "--divisor", "D2", "--base", "v0"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("S = {w4, v1, v2}\n", 0) == 0);
  }
  SUBCASE("reduce") {
    const Run r = run({"reduce", "--input", fig2, "--divisor", "D2", "--base", "v0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("degree 6") != std::string::npos);
  }
  SUBCASE("rr-check") {
    const Run r = run({"rr-check", "--input", fig2, "--divisor", "D2"});
    CHECK(r.code == 0);
    CHECK(r.out == "lhs 3 = rhs 3: OK\n");
  }
  SUBCASE("json output is deterministic") {
    const Run a = run({"move-step", "--input", fig2, "--divisor", "D2", "--base", "v0", "--json"});
    const Run b = run({"move-step", "--input", fig2, "--divisor", "D2", "--base", "v0", "--json"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"distance\": \"1/2\"") != std::string::npos);
  }
  SUBCASE("validate round-trips") {
    const Run r = run({"validate", "--input", fig2, "--json"});
    CHECK(r.out == read_file(fig2));
  }
  SUBCASE("rds commands") {
    CHECK(run({"is-rds", "--input", k4, "--set", "A"}).out == "rank-determining\n");
    CHECK(run({"min-rds-check", "--input", k4, "--set", "A"}).out == "minimal\n");
    CHECK(run({"rds-witness", "--input", k4, "--set", "B"}).out.find("divisor: (w1) + (w2)") != std::string::npos);
    CHECK(run({"rds-construct", "--input", k4}).code == 0);
    CHECK(run({"genus", "--input", k4}).out == "3\n");
    CHECK(run({"fg-rank", "--input", k4, "--divisor", "K"}).out == "rank 2\n");
  }
  SUBCASE("exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"rank", "--input", fig2}).code == 2);
    CHECK(run({"rank", "--input", fig2, "--divisor", "nope"}).code == 1);
    CHECK(run({"genus", "--input", "/nonexistent.json"}).code == 1);
    CHECK(run({"reduce", "--input", fig2, "--divisor", "D2", "--base", "v0", "--cap", "1"}).code == 3);
    CHECK(run({"is-rds", "--input", k4, "--set", "B", "--cap", "1"}).code == 3);
    CHECK(run({"genus", "--help"}).code == 0);
  }
  SUBCASE("cap from the environment") {
    setenv("TDL_CAP", "1", 1);
    CHECK(run({"reduce", "--input", fig2, "--divisor", "D2", "--base", "v0"}).code == 3);
    CHECK(run({"reduce", "--input", fig2, "--divisor", "D2", "--base", "v0", "--cap", "1000"}).code == 0);
    unsetenv("TDL_CAP");
  }
}
