#include "tdl/workspace.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tdl/errors.hpp"

namespace tdl {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(Errc::ParseError, (path.empty() ? "/" : path) + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

Rational as_rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }
  fail(path, "expected an integer or a rational string");
}

PointRef as_point(const MetricGraph& g, const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected a point object");
  if (j.contains("vertex")) {
    if (j.contains("edge")) fail(path, "point names both a vertex and an edge");
    const std::string id = as_string(j["vertex"], path + "/vertex");
    const auto v = g.find_vertex(id);
    if (!v) throw Error(Errc::UnknownId, path + "/vertex: no vertex named '" + id + "'");
    return PointRef::vertex(*v);
  }
  if (!j.contains("edge")) fail(path, "point needs 'vertex' or 'edge'");
  const std::string id = as_string(j["edge"], path + "/edge");
  const auto e = g.find_edge(id);
  if (!e) throw Error(Errc::UnknownId, path + "/edge: no edge named '" + id + "'");
  const Rational offset = as_rational(field(j, "offset", path), path + "/offset");
  if (offset.sign() < 0 || offset > g.edge(*e).length) {
    throw Error(Errc::InvalidPoint, path + "/offset: " + offset.str() + " is outside edge '" + id + "'");
  }
  return PointRef::on_edge(g, *e, offset);
}

json point_json(const MetricGraph& g, const PointRef& p) {
  if (p.is_vertex()) return json{{"vertex", g.vertex_id(p.vertex_index())}};
  return json{{"edge", g.edge(p.edge_index()).id}, {"offset", p.offset().str()}};
}

}  // namespace

std::string Workspace::name_of(const PointRef& p) const {
  for (const auto& [name, q] : points) {
    if (q == p) return name;
  }
  return tdl::describe(graph, p);
}

PointRef Workspace::resolve_point(std::string_view text) const {
  const auto it = points.find(std::string(text));
  if (it != points.end()) return it->second;
  return parse_point(graph, text);
}

std::string Workspace::describe(const Divisor& d) const {
  if (d.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, k] : d) {
    const long long mag = k < 0 ? -k : k;
    if (first) {
      if (k < 0) os << "-";
    } else {
      os << (k < 0 ? " - " : " + ");
    }
    if (mag != 1) os << mag;
    os << "(" << name_of(p) << ")";
    first = false;
  }
  return os.str();
}

Workspace parse_workspace(std::string_view text, const ValidateOptions& options) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
  if (!doc.is_object()) fail("", "expected an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "graph" && key != "divisors" && key != "points" && key != "sets") fail("/" + key, "unknown field");
  }

  const json& graph = field(doc, "graph", "");
  RawGraph raw;
  const json& vertices = field(graph, "vertices", "/graph");
  if (!vertices.is_array()) fail("/graph/vertices", "expected an array");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    raw.vertices.push_back(as_string(vertices[i], "/graph/vertices/" + std::to_string(i)));
  }
  const json& edges = field(graph, "edges", "/graph");
  if (!edges.is_array()) fail("/graph/edges", "expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string path = "/graph/edges/" + std::to_string(i);
    const json& ends = field(edges[i], "ends", path);
    if (!ends.is_array() || ends.size() != 2) fail(path + "/ends", "expected two vertex ids");
    raw.edges.push_back(RawEdge{as_string(field(edges[i], "id", path), path + "/id"),
                                as_string(ends[0], path + "/ends/0"), as_string(ends[1], path + "/ends/1"),
                                as_rational(field(edges[i], "length", path), path + "/length")});
  }

  Workspace ws{MetricGraph::validate(raw, options), {}, {}, {}};
  const MetricGraph& g = ws.graph;

  auto section = [&](const char* key) -> const json* {
    const auto it = doc.find(key);
    if (it == doc.end()) return nullptr;
    if (!it->is_object()) fail(std::string("/") + key, "expected an object");
    return &*it;
  };
  if (const json* points = section("points")) {
    for (const auto& [name, value] : points->items()) ws.points.emplace(name, as_point(g, value, "/points/" + name));
  }
  if (const json* divisors = section("divisors")) {
    for (const auto& [name, value] : divisors->items()) {
      const std::string path = "/divisors/" + name;
      if (!value.is_array()) fail(path, "expected an array");
      Divisor d;
      for (std::size_t i = 0; i < value.size(); ++i) {
        const std::string entry = path + "/" + std::to_string(i);
        const json& coeff = field(value[i], "coeff", entry);
        if (!coeff.is_number_integer()) fail(entry + "/coeff", "expected an integer");
        json point = value[i];
        point.erase("coeff");
        d.add(as_point(g, point, entry), coeff.get<long long>());
      }
      ws.divisors.emplace(name, std::move(d));
    }
  }
  if (const json* sets = section("sets")) {
    for (const auto& [name, value] : sets->items()) {
      const std::string path = "/sets/" + name;
      if (!value.is_array()) fail(path, "expected an array");
      std::vector<PointRef> pts;
      for (std::size_t i = 0; i < value.size(); ++i) pts.push_back(as_point(g, value[i], path + "/" + std::to_string(i)));
      ws.sets.emplace(name, std::move(pts));
    }
  }
  return ws;
}

std::string serialize_workspace(const Workspace& ws) {
  const MetricGraph& g = ws.graph;
  json edges = json::array();
  for (const auto& e : g.edges()) {
    edges.push_back(
        json{{"id", e.id}, {"ends", {g.vertex_id(e.lo), g.vertex_id(e.hi)}}, {"length", e.length.str()}});
  }
  json vertices = json::array();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) vertices.push_back(g.vertex_id(v));

  json doc{{"graph", {{"vertices", vertices}, {"edges", edges}}}};
  json points = json::object();
  for (const auto& [name, p] : ws.points) points[name] = point_json(g, p);
  json divisors = json::object();
  for (const auto& [name, d] : ws.divisors) {
    json list = json::array();
    for (const auto& [p, k] : d) {
      json entry = point_json(g, p);
      entry["coeff"] = k;
      list.push_back(std::move(entry));
    }
    divisors[name] = std::move(list);
  }
  json sets = json::object();
  for (const auto& [name, pts] : ws.sets) {
    json list = json::array();
    for (const auto& p : pts) list.push_back(point_json(g, p));
    sets[name] = std::move(list);
  }
  doc["points"] = std::move(points);
  doc["divisors"] = std::move(divisors);
  doc["sets"] = std::move(sets);
  return doc.dump(2) + "\n";
}

Workspace load_workspace(const std::string& path, const ValidateOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_workspace(text.str(), options);
}

}  // namespace tdl
