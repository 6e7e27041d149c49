#pragma once

#include "sstl/extended_real.hpp"
#include "sstl/time.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace sstl {

/// Left-closed right-open interval [begin, end).
struct Interval {
  Time begin;
  Time end;
  bool operator==(const Interval&) const = default;
};

/// Boolean signal on [0, T), stored as its positive set: the minimal list of
/// sorted, disjoint, non-adjacent intervals where the signal is true.
class BooleanSignal {
public:
  BooleanSignal() = default;

  /// Normalises `positive`: clips to [0, T), drops empty pieces, sorts and
  /// merges overlapping or adjacent intervals. Throws SignalError if T <= 0.
  BooleanSignal(Time horizon, std::vector<Interval> positive);

  static BooleanSignal constant(Time horizon, bool value);

  Time horizon() const noexcept { return horizon_; }
  std::span<const Interval> positive() const noexcept { return positive_; }

  /// Value at t in [0, T); false outside.
  bool value_at(const Time& t) const;

  bool operator==(const BooleanSignal&) const = default;

private:
  Time horizon_{1};
  std::vector<Interval> positive_;
};

BooleanSignal bool_not(const BooleanSignal& s);

/// Throw SignalError when horizons differ.
BooleanSignal bool_or(const BooleanSignal& a, const BooleanSignal& b);
BooleanSignal bool_and(const BooleanSignal& a, const BooleanSignal& b);

/// n-ary disjunction/conjunction; `horizon` is used when `signals` is empty
/// (false for disjunction, true for conjunction).
BooleanSignal bool_or_all(std::span<const BooleanSignal* const> signals, Time horizon);
BooleanSignal bool_and_all(std::span<const BooleanSignal* const> signals, Time horizon);

/// s1 U[t1,t2] s2 over unitary decompositions: for every positive interval
/// p of s1 and q of s2, the result holds on ((p n q) - [t1,t2]) n p, where
/// [m,n) - [a,b] = [m-b, n-a) clipped to [0,T]. Requires 0 <= t1 <= t2; the
/// point window t1 = t2 is exact for piecewise-constant signals.
BooleanSignal bool_until(const BooleanSignal& s1, const BooleanSignal& s2, Time t1, Time t2);

/// Boundaries of the minimal interval covering consistent with all
/// `signals`: 0, every interval endpoint strictly inside (0, T), and T.
std::vector<Time> joint_covering(std::span<const BooleanSignal* const> signals, Time horizon);

/// Piecewise-constant quantitative signal on a uniform grid: values[k] holds
/// on [k*h, (k+1)*h).
class QuantSignal {
public:
  QuantSignal() = default;
  /// Throws SignalError if step <= 0.
  QuantSignal(Time step, std::vector<ExtReal> values);

  static QuantSignal constant(Time step, std::size_t length, ExtReal value);

  Time step() const noexcept { return step_; }
  std::size_t size() const noexcept { return values_.size(); }
  const ExtReal& operator[](std::size_t k) const { return values_[k]; }
  std::span<const ExtReal> values() const noexcept { return values_; }

  /// First `n` samples (n <= size()).
  QuantSignal prefix(std::size_t n) const;

  bool operator==(const QuantSignal&) const = default;

private:
  Time step_{1};
  std::vector<ExtReal> values_;
};

enum class PointwiseOp { Neg, Min, Max };

/// Unary Neg ignores `b`. Binary ops throw SignalError on a step or length mismatch.
QuantSignal quant_pointwise(PointwiseOp op, const QuantSignal& a, const QuantSignal* b = nullptr);

QuantSignal quant_neg(const QuantSignal& a);
QuantSignal quant_min(const QuantSignal& a, const QuantSignal& b);
QuantSignal quant_max(const QuantSignal& a, const QuantSignal& b);

/// Until bounds snapped onto the sampling grid: lo = ceil(t1/h), hi = floor(t2/h).
struct GridWindow {
  std::size_t lo = 0;
  std::size_t hi = 0;
  /// True when t1 or t2 is not a multiple of h.
  bool snapped = false;
};

/// Throws SignalError if t1 > t2, a bound is negative, or the snapped window is empty.
GridWindow snap_window(Time t1, Time t2, Time step);

/// result[k] = max_{k' in [k+lo, k+hi]} min(r2[k'], min_{k'' in [k, k']} r1[k''])
/// The output holds n - hi samples where n = size of the inputs.
/// Throws SignalError on a grid mismatch and HorizonError if hi >= n.
QuantSignal quant_until(const QuantSignal& r1, const QuantSignal& r2, Time t1, Time t2);
QuantSignal quant_until(const QuantSignal& r1, const QuantSignal& r2, const GridWindow& window);

/// Debug dump, CSV `t,value` (one row per interval start / grid sample).
void write_signal_csv(const BooleanSignal& s, std::ostream& out);
void write_signal_csv(const QuantSignal& s, std::ostream& out);

} // namespace sstl
