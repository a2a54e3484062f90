#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "tdl/errors.hpp"
#include "tdl/rank.hpp"
#include "tdl/rds.hpp"
#include "tdl/reduction.hpp"
#include "tdl/workspace.hpp"

namespace py = pybind11;
using namespace tdl;

namespace {

// Points cross the boundary as their canonical strings ("w1", "e1@1/2") and
// divisors as {point: coefficient} dicts.
using PyDivisor = std::map<std::string, long long>;

std::vector<std::string> names(const MetricGraph& g, const std::vector<PointRef>& pts) {
  std::vector<std::string> out;
  for (const auto& p : pts) out.push_back(describe(g, p));
  return out;
}

std::vector<PointRef> points(const MetricGraph& g, const std::vector<std::string>& texts) {
  std::vector<PointRef> out;
  for (const auto& t : texts) out.push_back(parse_point(g, t));
  return out;
}

PyDivisor to_py(const MetricGraph& g, const Divisor& d) {
  PyDivisor out;
  for (const auto& [p, k] : d) out[describe(g, p)] = k;
  return out;
}

Divisor from_py(const MetricGraph& g, const PyDivisor& d) {
  Divisor out;
  for (const auto& [p, k] : d) out.add(parse_point(g, p), k);
  return out;
}

}  // namespace

PYBIND11_MODULE(_tdl, m) {
  m.doc() = "Divisors, reduction, rank and rank-determining sets on metric graphs";

  py::register_exception<Error>(m, "TdlError");

  py::class_<MetricGraph>(m, "MetricGraph")
      .def_property_readonly("genus", &MetricGraph::genus)
      .def_property_readonly("vertices",
                             [](const MetricGraph& g) {
                               std::vector<std::string> out;
                               for (std::size_t v = 0; v < g.vertex_count(); ++v) out.push_back(g.vertex_id(v));
                               return out;
                             })
      .def_property_readonly("edges", [](const MetricGraph& g) {
        std::vector<py::tuple> out;
        for (const auto& e : g.edges()) {
          out.push_back(py::make_tuple(e.id, g.vertex_id(e.lo), g.vertex_id(e.hi), e.length.str()));
        }
        return out;
      });

  py::class_<Workspace>(m, "Workspace")
      .def_readonly("graph", &Workspace::graph)
      .def_property_readonly("divisors",
                             [](const Workspace& ws) {
                               std::map<std::string, PyDivisor> out;
                               for (const auto& [name, d] : ws.divisors) out[name] = to_py(ws.graph, d);
                               return out;
                             })
      .def_property_readonly("points",
                             [](const Workspace& ws) {
                               std::map<std::string, std::string> out;
                               for (const auto& [name, p] : ws.points) out[name] = describe(ws.graph, p);
                               return out;
                             })
      .def_property_readonly("sets",
                             [](const Workspace& ws) {
                               std::map<std::string, std::vector<std::string>> out;
                               for (const auto& [name, s] : ws.sets) out[name] = names(ws.graph, s);
                               return out;
                             })
      .def("serialize", &serialize_workspace);

  m.def("load_workspace", [](const std::string& path) { return load_workspace(path); }, py::arg("path"));
  m.def("parse_workspace", [](const std::string& text) { return parse_workspace(text); }, py::arg("text"));

  m.def("canonical_divisor", [](const MetricGraph& g) { return to_py(g, canonical_divisor(g)); });

  m.def(
      "dhar",
      [](const MetricGraph& g, const PyDivisor& d, const std::string& base) {
        const DharOutcome r = dhar(g, from_py(g, d), parse_point(g, base));
        std::vector<std::vector<std::string>> layers;
        for (const auto& layer : r.burn_layers) layers.push_back(names(g, layer));
        return py::make_tuple(names(g, r.output), layers);
      },
      py::arg("graph"), py::arg("divisor"), py::arg("base"));

  m.def(
      "is_reduced",
      [](const MetricGraph& g, const PyDivisor& d, const std::string& base) {
        return is_reduced(g, from_py(g, d), parse_point(g, base));
      },
      py::arg("graph"), py::arg("divisor"), py::arg("base"));

  m.def(
      "move_step",
      [](const MetricGraph& g, const PyDivisor& d, const std::vector<std::string>& s, const std::string& base,
         const std::string& t) {
        return to_py(g, move_step(g, from_py(g, d), points(g, s), parse_point(g, base), Rational::parse(t)).result);
      },
      py::arg("graph"), py::arg("divisor"), py::arg("saturated"), py::arg("base"), py::arg("t") = "1");

  m.def(
      "reduce",
      [](const MetricGraph& g, const PyDivisor& d, const std::string& base) -> std::optional<PyDivisor> {
        const ReduceOrEmpty r = reduce_or_empty(g, from_py(g, d), parse_point(g, base));
        if (r.empty()) return std::nullopt;
        return to_py(g, *r.reduced);
      },
      py::arg("graph"), py::arg("divisor"), py::arg("base"),
      "The reduced divisor equivalent to D, or None when the linear system is empty.");

  m.def(
      "rank", [](const MetricGraph& g, const PyDivisor& d) { return rank(g, from_py(g, d)).rank; }, py::arg("graph"),
      py::arg("divisor"));

  m.def(
      "restricted_rank",
      [](const MetricGraph& g, const PyDivisor& d, const std::vector<std::string>& a) {
        return restricted_rank(g, from_py(g, d), points(g, a)).rank;
      },
      py::arg("graph"), py::arg("divisor"), py::arg("points"));

  m.def(
      "rr_check",
      [](const MetricGraph& g, const PyDivisor& d) {
        const RrReport r = rr_verify(g, from_py(g, d));
        py::dict out;
        out["rank"] = r.rank;
        out["dual_rank"] = r.dual_rank;
        out["lhs"] = r.lhs;
        out["rhs"] = r.rhs;
        out["equal"] = r.equal;
        return out;
      },
      py::arg("graph"), py::arg("divisor"));

  m.def(
      "fg_rank", [](const MetricGraph& g, const PyDivisor& d) { return fg_rank(g, from_py(g, d)); }, py::arg("graph"),
      py::arg("divisor"));

  m.def(
      "is_rank_determining",
      [](const MetricGraph& g, const std::vector<std::string>& a) -> std::optional<PyDivisor> {
        const RdsVerdict v = is_rank_determining(g, points(g, a));
        if (v.is_rds) return std::nullopt;
        return to_py(g, *v.witness_divisor);
      },
      py::arg("graph"), py::arg("points"),
      "None when the set is rank-determining, otherwise a witness divisor.");

  m.def(
      "is_minimal_rds",
      [](const MetricGraph& g, const std::vector<std::string>& a) {
        const MinimalityVerdict v = is_minimal_rds(g, points(g, a));
        return py::make_tuple(v.minimal, names(g, v.removable));
      },
      py::arg("graph"), py::arg("points"));

  m.def(
      "construct_rds", [](const MetricGraph& g) { return names(g, construct_rds_spanning(g)); }, py::arg("graph"));
}
