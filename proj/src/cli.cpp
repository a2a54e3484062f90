#include "tdl/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tdl/errors.hpp"
#include "tdl/rank.hpp"
#include "tdl/rds.hpp"
#include "tdl/reduction.hpp"
#include "tdl/workspace.hpp"

namespace tdl {

namespace {

using nlohmann::json;

struct Flags {
  std::string input;
  std::string divisor;
  std::string base;
  std::string set;
  std::string pool;
  std::string t = "1";
  std::optional<long long> cap;
  std::size_t max_size = 3;
  bool json = false;
  bool rr_shortcut = false;
  bool subdivide_loops = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Session {
 public:
  Session(const Flags& flags, std::ostream& out, std::ostream& err) : flags_(flags), out_(out), err_(err) {
    ValidateOptions options;
    options.subdivide_loops = flags.subdivide_loops;
    ws_ = load_workspace(flags.input, options);
  }

  const Workspace& ws() const { return ws_; }
  const MetricGraph& g() const { return ws_.graph; }
  std::ostream& out() { return out_; }
  bool json_mode() const { return flags_.json; }

  const Divisor& divisor() const {
    if (flags_.divisor.empty()) throw UsageError("--divisor is required");
    const auto it = ws_.divisors.find(flags_.divisor);
    if (it == ws_.divisors.end()) throw Error(Errc::UnknownId, "no divisor named '" + flags_.divisor + "'");
    return it->second;
  }

  PointRef base() const {
    if (flags_.base.empty()) return PointRef::vertex(0);
    return ws_.resolve_point(flags_.base);
  }

  const std::vector<PointRef>& named_set(const std::string& name, const char* flag) const {
    if (name.empty()) throw UsageError(std::string(flag) + " is required");
    const auto it = ws_.sets.find(name);
    if (it == ws_.sets.end()) throw Error(Errc::UnknownId, "no set named '" + name + "'");
    std::vector<PointRef> sorted = it->second;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      err_ << "warning: set '" << name << "' lists a point more than once; duplicates are ignored\n";
    }
    return it->second;
  }
  const std::vector<PointRef>& set() const { return named_set(flags_.set, "--set"); }
  bool has_set() const { return !flags_.set.empty(); }

  std::size_t cap(std::size_t fallback) const {
    std::optional<long long> value = flags_.cap;
    if (!value) {
      if (const char* env = std::getenv("TDL_CAP")) {
        try {
          value = std::stoll(env);
        } catch (const std::exception&) {
          throw UsageError(std::string("TDL_CAP is not an integer: '") + env + "'");
        }
      }
    }
    if (!value) return fallback;
    if (*value <= 0) throw UsageError("cap must be positive");
    return static_cast<std::size_t>(*value);
  }
  ReduceOptions reduce_options() const { return ReduceOptions{cap(kDefaultIterationCap), false}; }
  RankOptions rank_options() const {
    RankOptions options;
    options.reduce = reduce_options();
    options.rr_shortcut = flags_.rr_shortcut;
    return options;
  }
  std::size_t free_vertex_cap() const { return cap(kDefaultFreeVertexCap); }

  // Output helpers.
  std::string name(const PointRef& p) const { return ws_.name_of(p); }
  std::string names(const std::vector<PointRef>& pts) const {
    std::string s = "{";
    for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? ", " : "") + name(pts[i]);
    return s + "}";
  }
  std::string describe(const Divisor& d) const { return ws_.describe(d); }

  json point(const PointRef& p) const {
    if (p.is_vertex()) return json{{"vertex", g().vertex_id(p.vertex_index())}};
    return json{{"edge", g().edge(p.edge_index()).id}, {"offset", p.offset().str()}};
  }
  json points(const std::vector<PointRef>& pts) const {
    json list = json::array();
    for (const auto& p : pts) list.push_back(point(p));
    return list;
  }
  json divisor_json(const Divisor& d) const {
    json list = json::array();
    for (const auto& [p, k] : d) {
      json entry = point(p);
      entry["coeff"] = k;
      list.push_back(std::move(entry));
    }
    return list;
  }

  std::string segment(const RefinedModel& m, std::size_t me) const {
    const ModelEdge& e = m.edge(me);
    return g().edge(e.base_edge).id + "[" + e.from.str() + ", " + e.to.str() + "]";
  }
  json segment_json(const RefinedModel& m, std::size_t me) const {
    const ModelEdge& e = m.edge(me);
    return json{{"edge", g().edge(e.base_edge).id}, {"from", e.from.str()}, {"to", e.to.str()}};
  }
  std::vector<PointRef> model_points(const RefinedModel& m, const std::vector<std::size_t>& vs) const {
    std::vector<PointRef> pts;
    for (std::size_t v : vs) pts.push_back(m.point(v));
    std::sort(pts.begin(), pts.end());
    return pts;
  }

  std::string locus_text(const ClosedLocus& x) const {
    const RefinedModel& m = x.model();
    std::string edges;
    for (std::size_t me = 0; me < m.edge_count(); ++me) {
      if (x.has_edge(me)) edges += (edges.empty() ? "" : ", ") + segment(m, me);
    }
    return "points " + names(model_points(m, x.vertices())) + "; segments {" + edges + "}";
  }
  json locus_json(const ClosedLocus& x) const {
    const RefinedModel& m = x.model();
    json edges = json::array();
    for (std::size_t me = 0; me < m.edge_count(); ++me) {
      if (x.has_edge(me)) edges.push_back(segment_json(m, me));
    }
    return json{{"points", points(model_points(m, x.vertices()))}, {"segments", edges}};
  }

  std::string region_text(const OpenRegion& r) const {
    const RefinedModel& m = r.model();
    std::string edges;
    for (std::size_t me = 0; me < m.edge_count(); ++me) {
      if (r.part(me) != OpenRegion::Part::None) edges += (edges.empty() ? "" : ", ") + segment(m, me);
    }
    return "points " + names(model_points(m, r.interior_vertices())) + "; segments {" + edges + "}; boundary " +
           names(model_points(m, r.boundary()));
  }
  json region_json(const OpenRegion& r) const {
    const RefinedModel& m = r.model();
    json full = json::array();
    json stubs = json::array();
    for (std::size_t me = 0; me < m.edge_count(); ++me) {
      if (r.part(me) == OpenRegion::Part::Full) full.push_back(segment_json(m, me));
      if (r.part(me) == OpenRegion::Part::Stub) stubs.push_back(segment_json(m, me));
    }
    return json{{"points", points(model_points(m, r.interior_vertices()))},
                {"full_segments", full},
                {"stub_segments", stubs},
                {"boundary", points(model_points(m, r.boundary()))}};
  }

  Rational t() const { return Rational::parse(flags_.t); }
  std::size_t max_size() const { return flags_.max_size; }
  const std::vector<PointRef>& pool() const { return named_set(flags_.pool, "--pool"); }

  void emit(const json& j) { out_ << j.dump(2) << "\n"; }

 private:
  const Flags& flags_;
  std::ostream& out_;
  std::ostream& err_;
  Workspace ws_;
};

using Handler = std::function<int(Session&)>;

int cmd_validate(Session& s) {
  if (s.json_mode()) {
    s.out() << serialize_workspace(s.ws());
  } else {
    s.out() << "valid: " << s.g().vertex_count() << " vertices, " << s.g().edge_count() << " edges, genus "
            << s.g().genus() << "\n";
  }
  return 0;
}

int cmd_genus(Session& s) {
  if (s.json_mode()) {
    s.emit(json{{"genus", s.g().genus()}});
  } else {
    s.out() << s.g().genus() << "\n";
  }
  return 0;
}

int cmd_canonical(Session& s) {
  const Divisor k = canonical_divisor(s.g());
  if (s.json_mode()) {
    s.emit(json{{"divisor", s.divisor_json(k)}, {"degree", k.degree()}});
  } else {
    s.out() << s.describe(k) << "\n";
  }
  return 0;
}

int cmd_reduce(Session& s) {
  const Divisor& d = s.divisor();
  const PointRef v0 = s.base();
  const ReduceOrEmpty r = reduce_or_empty(s.g(), d, v0, s.reduce_options());
  if (s.json_mode()) {
    json j{{"base", s.point(v0)}, {"degree", d.degree()}, {"empty", r.empty()}};
    if (r.reduced) j["reduced"] = s.divisor_json(*r.reduced);
    s.emit(j);
    return 0;
  }
  if (r.empty()) {
    s.out() << "empty linear system\n";
  } else {
    s.out() << "reduced: " << s.describe(*r.reduced) << "\n";
  }
  s.out() << "degree " << d.degree() << "\n";
  return 0;
}

int cmd_is_reduced(Session& s) {
  const bool reduced = is_reduced(s.g(), s.divisor(), s.base());
  if (s.json_mode()) {
    s.emit(json{{"reduced", reduced}});
  } else {
    s.out() << (reduced ? "reduced" : "not reduced") << "\n";
  }
  return 0;
}

int cmd_dhar(Session& s) {
  const DharOutcome r = dhar(s.g(), s.divisor(), s.base());
  if (s.json_mode()) {
    json layers = json::array();
    for (const auto& layer : r.burn_layers) layers.push_back(s.points(layer));
    s.emit(json{{"output", s.points(r.output)}, {"layers", layers}});
    return 0;
  }
  s.out() << "S = " << s.names(r.output) << "\n";
  for (std::size_t i = 0; i < r.burn_layers.size(); ++i) {
    s.out() << "layer " << i << ": " << s.names(r.burn_layers[i]) << "\n";
  }
  return 0;
}

int cmd_move_step(Session& s) {
  const Divisor& d = s.divisor();
  const PointRef v0 = s.base();
  const std::vector<PointRef> set = s.has_set() ? s.set() : dhar(s.g(), d, v0).output;
  const MoveOutcome r = move_step(s.g(), d, set, v0, s.t());
  if (s.json_mode()) {
    json comps = json::array();
    for (const auto& c : r.components) {
      json debits = json::array();
      for (const auto& [p, k] : c.debits) {
        json entry = s.point(p);
        entry["coeff"] = -k;
        debits.push_back(std::move(entry));
      }
      comps.push_back(json{{"component", s.locus_json(c.component)},
                           {"distance", c.distance.str()},
                           {"reach", c.reach.str()},
                           {"debits", debits},
                           {"landings", s.divisor_json(c.landings)}});
    }
    s.emit(json{{"components", comps}, {"result", s.divisor_json(r.result)}});
    return 0;
  }
  for (std::size_t i = 0; i < r.components.size(); ++i) {
    const auto& c = r.components[i];
    Divisor debits;
    for (const auto& [p, k] : c.debits) debits.add(p, -k);
    s.out() << "component " << i + 1 << ": " << s.locus_text(c.component) << "\n"
            << "  distance " << c.distance.str() << "\n"
            << "  debits " << s.describe(debits) << "\n"
            << "  landings " << s.describe(c.landings) << "\n";
  }
  s.out() << "result: " << s.describe(r.result) << "\n";
  return 0;
}

int report_rank(Session& s, const char* label, const RankReport& r) {
  if (s.json_mode()) {
    json j{{"rank", r.rank}};
    if (r.failing_witness) j["failing_witness"] = s.divisor_json(*r.failing_witness);
    s.emit(j);
    return 0;
  }
  s.out() << label << " " << r.rank << "\n";
  if (r.failing_witness) s.out() << "failing witness: " << s.describe(*r.failing_witness) << "\n";
  return 0;
}

int cmd_rank(Session& s) { return report_rank(s, "rank", rank(s.g(), s.divisor(), s.rank_options())); }

int cmd_restricted_rank(Session& s) {
  return report_rank(s, "restricted rank", restricted_rank(s.g(), s.divisor(), s.set(), s.rank_options()));
}

int cmd_empty_check(Session& s) {
  const ReduceOrEmpty r = reduce_or_empty(s.g(), s.divisor(), s.base(), s.reduce_options());
  if (s.json_mode()) {
    json j{{"empty", r.empty()}};
    if (r.reduced) j["representative"] = s.divisor_json(*r.reduced);
    if (r.certificate) {
      j["certificate"] = json{{"point", s.point(r.certificate->point)},
                              {"available", r.certificate->available},
                              {"required", r.certificate->required}};
    }
    s.emit(j);
    return 0;
  }
  if (r.empty()) {
    const auto& c = *r.certificate;
    s.out() << "empty: " << s.name(c.point) << " needs " << c.required << " chips, reduced form has " << c.available
            << "\n";
  } else {
    s.out() << "nonempty: " << s.describe(*r.reduced) << "\n";
  }
  return 0;
}

int cmd_support_locus(Session& s) {
  const SupportLocus r = support_locus(s.g(), s.divisor(), s.reduce_options());
  if (s.json_mode()) {
    json regions = json::array();
    for (const auto& region : r.regions) regions.push_back(s.region_json(region));
    s.emit(json{{"locus", s.locus_json(r.locus)}, {"complement_regions", regions}});
    return 0;
  }
  s.out() << "locus: " << s.locus_text(r.locus) << "\n";
  for (std::size_t i = 0; i < r.regions.size(); ++i) {
    s.out() << "region " << i + 1 << ": " << s.region_text(r.regions[i]) << "\n";
  }
  return 0;
}

int cmd_rr_check(Session& s) {
  const RrReport r = rr_verify(s.g(), s.divisor(), s.reduce_options());
  if (s.json_mode()) {
    s.emit(json{{"rank", r.rank}, {"dual_rank", r.dual_rank}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"equal", r.equal}});
  } else {
    s.out() << "lhs " << r.lhs << " = rhs " << r.rhs << ": " << (r.equal ? "OK" : "MISMATCH") << "\n";
  }
  return r.equal ? 0 : 3;
}

int cmd_is_rds(Session& s) {
  const RdsVerdict v = is_rank_determining(s.g(), s.set(), s.free_vertex_cap());
  if (s.json_mode()) {
    json j{{"rank_determining", v.is_rds}};
    if (v.witness) j["witness_region"] = s.region_json(v.witness->region);
    if (v.witness_divisor) j["witness_divisor"] = s.divisor_json(*v.witness_divisor);
    s.emit(j);
    return 0;
  }
  s.out() << (v.is_rds ? "rank-determining" : "not rank-determining") << "\n";
  if (v.witness) {
    s.out() << "witness region: " << s.region_text(v.witness->region) << "\n"
            << "witness divisor: " << s.describe(*v.witness_divisor) << "\n";
  }
  return 0;
}

int cmd_l_closure(Session& s) {
  const ClosedLocus x = l_closure(s.g(), s.set(), s.free_vertex_cap());
  if (s.json_mode()) {
    s.emit(s.locus_json(x));
  } else {
    s.out() << s.locus_text(x) << "\n";
  }
  return 0;
}

int cmd_rds_witness(Session& s) {
  const auto found = special_avoiding(s.g(), s.set(), SearchOptions{std::nullopt, false, s.free_vertex_cap()});
  if (found.empty()) {
    if (s.json_mode()) {
      s.emit(json{{"witness", nullptr}});
    } else {
      s.out() << "none: the set is rank-determining\n";
    }
    return 0;
  }
  const Divisor d = witness_divisor(found.front());
  if (s.json_mode()) {
    s.emit(json{{"witness", {{"region", s.region_json(found.front().region)}, {"divisor", s.divisor_json(d)}}}});
  } else {
    s.out() << "region: " << s.region_text(found.front().region) << "\n"
            << "divisor: " << s.describe(d) << "\n";
  }
  return 0;
}

int cmd_min_rds_check(Session& s) {
  const MinimalityVerdict v = is_minimal_rds(s.g(), s.set(), s.free_vertex_cap());
  if (s.json_mode()) {
    s.emit(json{{"minimal", v.minimal}, {"removable", s.points(v.removable)}});
    return 0;
  }
  s.out() << (v.minimal ? "minimal" : "not minimal") << "\n";
  if (!v.removable.empty()) s.out() << "removable: " << s.names(v.removable) << "\n";
  return 0;
}

int cmd_rds_construct(Session& s) {
  SpanningOptions options;
  options.base = s.base();
  const auto pts = construct_rds_spanning(s.g(), options);
  if (s.json_mode()) {
    s.emit(json{{"set", s.points(pts)}, {"size", pts.size()}});
  } else {
    s.out() << s.names(pts) << "\n";
  }
  return 0;
}

int cmd_min_rds_search(Session& s) {
  const auto sets = minimal_rds_search(s.g(), s.pool(), s.max_size(), s.free_vertex_cap());
  if (s.json_mode()) {
    json list = json::array();
    for (const auto& a : sets) list.push_back(s.points(a));
    s.emit(json{{"minimal_sets", list}});
    return 0;
  }
  for (const auto& a : sets) s.out() << s.names(a) << "\n";
  s.out() << sets.size() << " minimal rank-determining sets\n";
  return 0;
}

int cmd_fg_rank(Session& s) {
  const int r = fg_rank(s.g(), s.divisor());
  if (s.json_mode()) {
    s.emit(json{{"rank", r}});
  } else {
    s.out() << "rank " << r << "\n";
  }
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags flags;
  CLI::App app{"Divisor theory on metric graphs", "tdl"};
  app.require_subcommand(1);

  struct Command {
    const char* name;
    const char* help;
    Handler handler;
    bool divisor;
    bool base;
    bool set;
  };
  const std::vector<Command> commands = {
      {"validate", "Validate a workspace", cmd_validate, false, false, false},
      {"genus", "First Betti number of the graph", cmd_genus, false, false, false},
      {"canonical", "Canonical divisor", cmd_canonical, false, false, false},
      {"reduce", "Reduced divisor equivalent to D", cmd_reduce, true, true, false},
      {"is-reduced", "Whether D is reduced at the base point", cmd_is_reduced, true, true, false},
      {"dhar", "Burning algorithm", cmd_dhar, true, true, false},
      {"move-step", "One chip-moving step", cmd_move_step, true, true, true},
      {"rank", "Rank of D", cmd_rank, true, false, false},
      {"restricted-rank", "Rank of D restricted to a set", cmd_restricted_rank, true, false, true},
      {"empty-check", "Whether the linear system of D is empty", cmd_empty_check, true, true, false},
      {"support-locus", "Common support of the linear system of D", cmd_support_locus, true, false, false},
      {"rr-check", "Riemann-Roch check for D", cmd_rr_check, true, false, false},
      {"is-rds", "Whether a set is rank-determining", cmd_is_rds, false, false, true},
      {"l-closure", "Closure L(A) of a set", cmd_l_closure, false, false, true},
      {"rds-witness", "Special open set and divisor avoiding a set", cmd_rds_witness, false, false, true},
      {"min-rds-check", "Whether a rank-determining set is minimal", cmd_min_rds_check, false, false, true},
      {"rds-construct", "Rank-determining set of g + 1 points", cmd_rds_construct, false, true, false},
      {"min-rds-search", "Minimal rank-determining subsets of a pool", cmd_min_rds_search, false, false, false},
      {"fg-rank", "Rank on the underlying finite graph", cmd_fg_rank, true, false, false},
  };

  std::map<CLI::App*, Handler> handlers;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--input", flags.input, "Workspace JSON file")->required();
    sub->add_flag("--json", flags.json, "Machine-readable output");
    sub->add_option("--cap", flags.cap, "Iteration or search cap");
    if (c.divisor) sub->add_option("--divisor", flags.divisor, "Divisor name");
    if (c.base) sub->add_option("--base", flags.base, "Base point (name or e.g. w1, e1@1/2)");
    if (c.set) sub->add_option("--set", flags.set, "Set name");
    const std::string name = c.name;
    if (name == "move-step") sub->add_option("--t", flags.t, "Step fraction in (0, 1]");
    if (name == "rank") sub->add_flag("--rr-shortcut", flags.rr_shortcut, "Use deg - g above 2g - 2");
    if (name == "validate") sub->add_flag("--subdivide-loops", flags.subdivide_loops, "Subdivide loop edges");
    if (name == "min-rds-search") {
      sub->add_option("--pool", flags.pool, "Set name of candidate points");
      sub->add_option("--max-size", flags.max_size, "Largest subset size");
    }
    handlers.emplace(sub, c.handler);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  try {
    Session session(flags, out, err);
    return handlers.at(chosen)(session);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_internal_defect(e.code()) ? 3 : 1;
  }
}

}  // namespace tdl
