#include "tdl/divisor.hpp"

#include <algorithm>
#include <sstream>

#include "tdl/errors.hpp"

namespace tdl {

Divisor::Divisor(const std::vector<std::pair<PointRef, long long>>& terms) {
  for (const auto& [p, k] : terms) add(p, k);
}

long long Divisor::operator[](const PointRef& p) const {
  const auto it = chips_.find(p);
  return it == chips_.end() ? 0 : it->second;
}

void Divisor::add(const PointRef& p, long long k) {
  if (k == 0) return;
  auto [it, inserted] = chips_.try_emplace(p, k);
  if (!inserted) {
    it->second += k;
    if (it->second == 0) chips_.erase(it);
  }
}

long long Divisor::degree() const {
  long long sum = 0;
  for (const auto& [p, k] : chips_) sum += k;
  return sum;
}

bool Divisor::is_effective() const {
  return std::all_of(chips_.begin(), chips_.end(), [](const auto& kv) { return kv.second > 0; });
}

bool Divisor::is_effective_away_from(const PointRef& q) const {
  return std::all_of(chips_.begin(), chips_.end(), [&](const auto& kv) { return kv.second > 0 || kv.first == q; });
}

std::vector<PointRef> Divisor::support() const {
  std::vector<PointRef> out;
  out.reserve(chips_.size());
  for (const auto& [p, k] : chips_) out.push_back(p);
  return out;
}

Divisor Divisor::positive_part() const {
  Divisor out;
  for (const auto& [p, k] : chips_) {
    if (k > 0) out.chips_.emplace_hint(out.chips_.end(), p, k);
  }
  return out;
}

Divisor Divisor::negative_part() const {
  Divisor out;
  for (const auto& [p, k] : chips_) {
    if (k < 0) out.chips_.emplace_hint(out.chips_.end(), p, -k);
  }
  return out;
}

Divisor Divisor::operator-() const {
  Divisor out = *this;
  for (auto& [p, k] : out.chips_) k = -k;
  return out;
}

Divisor& Divisor::operator+=(const Divisor& o) {
  for (const auto& [p, k] : o.chips_) add(p, k);
  return *this;
}

Divisor& Divisor::operator-=(const Divisor& o) {
  for (const auto& [p, k] : o.chips_) add(p, -k);
  return *this;
}

std::string describe(const MetricGraph& g, const Divisor& d) {
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
    os << "(" << describe(g, p) << ")";
    first = false;
  }
  return os.str();
}

Divisor canonical_divisor(const MetricGraph& g) {
  Divisor k;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) k.add(PointRef::vertex(v), g.degree(v) - 2);
  return k;
}

Rational safe_radius(const ClosedLocus& x) {
  const RefinedModel& model = x.model();
  std::optional<Rational> radius;
  for (std::size_t v : x.boundary()) {
    for (std::size_t me : model.incident(v)) {
      if (x.has_edge(me)) continue;
      const std::size_t w = model.other_end(me, v);
      Rational reach = model.edge(me).length();
      if (x.has_vertex(w)) reach /= Rational(2);
      if (!radius || reach < *radius) radius = reach;
    }
  }
  if (!radius) throw Error(Errc::InvalidArgument, "locus has no boundary");
  return *radius;
}

Divisor apply_basic_extremal(const Divisor& d, const ClosedLocus& x, const Rational& epsilon, bool strict) {
  if (!x.is_connected()) throw Error(Errc::NotConnected, "maximum region must be connected");
  const auto boundary = x.boundary();
  if (boundary.empty()) return d;
  if (epsilon.sign() <= 0) throw Error(Errc::UnsafeEpsilon, "epsilon must be positive");
  const Rational radius = safe_radius(x);
  if (epsilon > radius) {
    throw Error(Errc::UnsafeEpsilon, "epsilon " + epsilon.str() + " exceeds safe radius " + radius.str());
  }
  const RefinedModel& model = x.model();
  Divisor out = d;
  for (std::size_t v : boundary) {
    const PointRef& p = model.point(v);
    const int out_deg = x.outdeg(v);
    if (strict && d[p] < out_deg) {
      throw Error(Errc::NotSaturated, describe(model.base(), p) + " holds fewer chips than its out-degree");
    }
    out.add(p, -out_deg);
    for (std::size_t me : model.incident(v)) {
      if (!x.has_edge(me)) out.add(model.point_along(me, v, epsilon), 1);
    }
  }
  return out;
}

}  // namespace tdl
