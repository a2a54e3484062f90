#pragma once

#include <map>
#include <string>
#include <vector>

#include "tdl/graph.hpp"
#include "tdl/model.hpp"

namespace tdl {

/// Finite integer combination of points. Zero coefficients are never stored,
/// so the key set is the support. Iteration follows canonical point order.
class Divisor {
 public:
  using Map = std::map<PointRef, long long>;

  Divisor() = default;
  explicit Divisor(const std::vector<std::pair<PointRef, long long>>& terms);

  long long operator[](const PointRef& p) const;
  void add(const PointRef& p, long long k);

  long long degree() const;
  bool is_effective() const;
  /// Nonnegative everywhere except possibly at `p`.
  bool is_effective_away_from(const PointRef& p) const;
  bool is_zero() const { return chips_.empty(); }

  std::vector<PointRef> support() const;
  std::size_t support_size() const { return chips_.size(); }

  Divisor positive_part() const;
  Divisor negative_part() const;  // as an effective divisor

  Map::const_iterator begin() const { return chips_.begin(); }
  Map::const_iterator end() const { return chips_.end(); }

  Divisor operator-() const;
  Divisor& operator+=(const Divisor& o);
  Divisor& operator-=(const Divisor& o);
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  friend bool operator==(const Divisor&, const Divisor&) = default;

 private:
  Map chips_;
};

inline long long degree(const Divisor& d) { return d.degree(); }
inline bool is_effective(const Divisor& d) { return d.is_effective(); }

/// "2(w1) + (e1@1/2) - (w3)"; "0" for the zero divisor.
std::string describe(const MetricGraph& g, const Divisor& d);

/// Divisor with coefficient deg(v) - 2 at every vertex.
Divisor canonical_divisor(const MetricGraph& g);

/// Largest epsilon for which the collar of width epsilon around `x` stays
/// inside the model edges leaving it: each exit direction may run up to the
/// next model vertex, or halfway when both ends of the edge lie in `x`.
Rational safe_radius(const ClosedLocus& x);

/// D + (f) for the basic extremal function with maximum region `x` and a
/// slope-1 collar of width `epsilon`: every boundary point of `x` gives up one
/// chip per exit direction and each chip lands `epsilon` further out.
///
/// Throws NotConnected for a disconnected `x` and UnsafeEpsilon when epsilon
/// is nonpositive or exceeds safe_radius(x). With `strict`, also throws
/// NotSaturated when a boundary point holds fewer chips than its out-degree.
Divisor apply_basic_extremal(const Divisor& d, const ClosedLocus& x, const Rational& epsilon,
                             bool strict = false);

}  // namespace tdl
