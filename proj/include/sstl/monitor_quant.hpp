#pragma once

#include "sstl/extended_real.hpp"
#include "sstl/formula.hpp"
#include "sstl/monitor_bool.hpp"
#include "sstl/signals.hpp"
#include "sstl/space.hpp"
#include "sstl/trace.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sstl {

struct QuantResult {
  /// One signal per location. Temporal operators shorten the grid, so the
  /// length is samples - (number of trailing samples consumed).
  std::vector<QuantSignal> signals;
  /// robustness_at_zero[l] == signals[l][0]
  std::vector<ExtReal> robustness_at_zero;
  /// Non-fatal notes, e.g. until bounds snapped onto the sampling grid.
  std::vector<std::string> warnings;
};

/// Quantitative monitoring on the trace grid. rho(true) = +inf,
/// rho(false) = -inf, atoms give f (see Atom).
///
/// Throws SchemaError and HorizonError like monitor_bool, and
/// EvaluationError for '==' atoms, which have no robustness.
QuantResult monitor_quant(const Formula& formula, const Trace& trace, const SpaceModel& space,
                          const MonitorOptions& options = {});

struct SurroundStats {
  /// Updates that changed the iterate before the fixed point was reached.
  std::size_t iterations = 0;
};

/// Quantitative surround at one location and one instant.
///
/// `r1` and `r2` hold one value per location. With s1 = r1 padded to -inf
/// beyond d2 and s2 = r2 padded to -inf outside [d1, d2], iterates
/// X(0) = s1, X(i+1)(m) = min(X(i)(m), min over neighbours n of max(X(i)(n), s2(n)))
/// to its fixed point and returns X(l). Descent is monotone and the number
/// of changing updates is at most the number of iterated locations; both are
/// checked on every call (std::logic_error). Optimal paths need not be
/// shortest ones, so the count can exceed hop_diameter + 1.
ExtReal quant_surround(std::span<const ExtReal> r1, std::span<const ExtReal> r2,
                       const SpaceModel& space, LocationIndex l, double d1, double d2,
                       SurroundStats* stats = nullptr,
                       SurroundStrategy strategy = SurroundStrategy::Full);

/// max over A in the d2-ball with l in A of min(min_A r1, min over B+(A) of r2),
/// with r2 taken as -inf outside [d1, d2]. Throws std::length_error if the
/// ball exceeds 20 locations.
ExtReal brute_force_surround(std::span<const ExtReal> r1, std::span<const ExtReal> r2,
                             const SpaceModel& space, LocationIndex l, double d1, double d2);

/// CSV `location,robustness` with the value at time 0 ("inf"/"-inf" allowed).
void write_robustness_csv(const QuantResult& result, const SpaceModel& space, std::ostream& out);
/// CSV `location,t,value` with every grid sample.
void write_robustness_dump(const QuantResult& result, const SpaceModel& space, std::ostream& out);
/// CSV `location,satisfied` with 0/1 at time 0.
void write_satisfaction_csv(const BoolResult& result, const SpaceModel& space, std::ostream& out);

} // namespace sstl
