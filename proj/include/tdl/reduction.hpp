#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tdl/divisor.hpp"
#include "tdl/graph.hpp"
#include "tdl/model.hpp"

namespace tdl {

inline constexpr std::size_t kDefaultIterationCap = 1'000'000;

inline int outdeg(const ClosedLocus& x, std::size_t v) { return x.outdeg(v); }

/// Result of the burning procedure. `output` is the set S left when every
/// boundary point of the complement of `final_region` is saturated (empty when
/// the divisor is reduced); `burn_layers` lists the non-saturated points
/// removed in each round.
struct DharOutcome {
  std::vector<PointRef> output;
  std::vector<std::vector<PointRef>> burn_layers;
  OpenRegion final_region;
};

/// Burning algorithm for metric graphs. `d` must be nonnegative away from
/// `v0` (NotEffective otherwise); the coefficient at `v0` is ignored.
DharOutcome dhar(const MetricGraph& g, const Divisor& d, const PointRef& v0);

/// True iff `d` is nonnegative away from `v0` and dhar() burns everything.
bool is_reduced(const MetricGraph& g, const Divisor& d, const PointRef& v0);

/// Half-open piece of a base edge swept by one chip: it excludes the point the
/// chip left from and includes the landing point.
struct SweptSegment {
  PointRef start;
  PointRef landing;
  std::size_t edge;
};

struct ComponentMove {
  ClosedLocus component;
  /// Distance from the component to the nearest vertex or base point inside
  /// the free region, before scaling by t.
  Rational reach;
  /// t * reach; every chip of this component travels exactly this far.
  Rational distance;
  /// (boundary point, chips given up = out-degree).
  std::vector<std::pair<PointRef, int>> debits;
  Divisor landings;
  std::vector<SweptSegment> swept;
};

struct MoveOutcome {
  std::vector<ComponentMove> components;
  Divisor result;
};

/// One move toward `v0`: every component of the complement of the free region
/// around `v0` pushes one chip out of each exit direction, all by the same
/// distance t * reach. `s` must be a saturated dhar() output.
MoveOutcome move_step(const MetricGraph& g, const Divisor& d, const std::vector<PointRef>& s, const PointRef& v0,
                      const Rational& t = Rational(1));

struct ReduceOptions {
  std::size_t iteration_cap = kDefaultIterationCap;
  bool record_trace = true;
};

/// Iterates of a reduction. The divisor lists and per-iteration outcomes are
/// filled only when ReduceOptions::record_trace is set; `iterations` always is.
struct ReductionTrace {
  std::vector<Divisor> iterates;
  std::vector<DharOutcome> dhar_runs;
  std::vector<MoveOutcome> moves;
  std::size_t iterations = 0;
};

struct Reduction {
  Divisor divisor;
  ReductionTrace trace;
};

/// The unique v0-reduced divisor equivalent to `d`, which must be nonnegative
/// away from `v0`. Throws IterationCapExceeded after `iteration_cap` moves.
Reduction reduce_effective(const MetricGraph& g, const Divisor& d, const PointRef& v0,
                           const ReduceOptions& options = {});

/// Why a linear system is empty: after reducing at `point`, only `available`
/// chips were there while `required` had to be removed.
struct EmptyCertificate {
  PointRef point;
  long long available;
  long long required;
};

struct ReduceOrEmpty {
  std::optional<Divisor> reduced;
  std::optional<EmptyCertificate> certificate;

  bool empty() const { return !reduced.has_value(); }
};

/// v0-reduced representative of an arbitrary divisor when its linear system is
/// nonempty; otherwise a certificate of emptiness.
///
/// The negative part is removed greedily: the positive part is reduced at
/// each negative point in canonical order before its chips are subtracted.
ReduceOrEmpty reduce_or_empty(const MetricGraph& g, const Divisor& d, const PointRef& v0,
                              const ReduceOptions& options = {});

/// Support of the linear system |d| and the special regions making up its
/// complement. All share one refined model. Throws EmptySystem when |d| is
/// empty.
struct SupportLocus {
  ClosedLocus locus;
  std::vector<OpenRegion> regions;
};

SupportLocus support_locus(const MetricGraph& g, const Divisor& d, const ReduceOptions& options = {});

}  // namespace tdl
