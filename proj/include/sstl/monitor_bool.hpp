#pragma once

#include "sstl/formula.hpp"
#include "sstl/signals.hpp"
#include "sstl/space.hpp"
#include "sstl/trace.hpp"

#include <span>
#include <vector>

namespace sstl {

/// How the quantitative surround fixed point is iterated.
enum class SurroundStrategy {
  /// Over every location, with out-of-range signals padded to -inf.
  Full,
  /// Over the locations within d2 only. Locations outside that ball stay at
  /// -inf under the iteration, so values and iteration counts are identical
  /// to Full.
  Restricted,
};

struct MonitorOptions {
  /// Worker threads; 0 means hardware concurrency. Results do not depend on it.
  unsigned jobs = 0;
  SurroundStrategy surround = SurroundStrategy::Restricted;
  /// Cross-check every surround evaluation against subset enumeration
  /// (where the ball has at most 20 locations); throws std::logic_error on a
  /// mismatch.
  bool oracle = false;
};

struct BoolResult {
  /// One signal per location, on [0, samples*h).
  std::vector<BooleanSignal> signals;
  /// satisfied_at_zero[l] == signals[l].value_at(0)
  std::vector<bool> satisfied_at_zero;

  bool satisfied(LocationIndex l, const Time& t) const { return signals.at(l).value_at(t); }
};

/// Boolean monitoring, bottom-up over the syntax tree. Shared subformulas
/// are evaluated once.
///
/// Throws SchemaError when the trace lacks a formula variable or its
/// locations differ from the space, and HorizonError when the formula looks
/// past the last sample.
BoolResult monitor_bool(const Formula& formula, const Trace& trace, const SpaceModel& space,
                        const MonitorOptions& options = {});

/// Disjunction of `child` over locations_in_range(l, d1, d2); constant
/// false when that set is empty.
BooleanSignal bool_somewhere(std::span<const BooleanSignal> child, const SpaceModel& space,
                             LocationIndex l, double d1, double d2);

/// Conjunction over the same set; constant true when it is empty.
BooleanSignal bool_everywhere(std::span<const BooleanSignal> child, const SpaceModel& space,
                              LocationIndex l, double d1, double d2);

/// Boolean surround at one location.
///
/// Per interval of the joint covering of the child signals on the d2-ball:
/// V holds the phi1 locations of the ball, Q the phi2 locations at distance
/// [d1, d2], and W the external boundary of V u Q. Locations of V adjacent to
/// W are dropped repeatedly, the dropped ones outside Q joining W, until W
/// is empty. The result is true on the interval iff l survives in V.
BooleanSignal bool_surround(std::span<const BooleanSignal> phi1, std::span<const BooleanSignal> phi2,
                            const SpaceModel& space, LocationIndex l, double d1, double d2);

/// Surround at a single instant by enumeration of every A in the d2-ball
/// containing l. Throws std::length_error if the ball exceeds 20 locations.
bool brute_force_bool_surround(const std::vector<bool>& phi1, const std::vector<bool>& phi2,
                               const SpaceModel& space, LocationIndex l, double d1, double d2);

} // namespace sstl
