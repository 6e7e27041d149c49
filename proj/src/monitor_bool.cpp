#include "sstl/monitor_bool.hpp"

#include "monitor_common.hpp"
#include "parallel.hpp"
#include "sstl/errors.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace sstl {

BooleanSignal bool_somewhere(std::span<const BooleanSignal> child, const SpaceModel& space,
                             LocationIndex l, double d1, double d2) {
  const auto range = space.locations_in_range(l, d1, d2);
  std::vector<const BooleanSignal*> parts;
  parts.reserve(range.size());
  for (const auto m : range) parts.push_back(&child[m]);
  return bool_or_all(parts, child[l].horizon());
}

BooleanSignal bool_everywhere(std::span<const BooleanSignal> child, const SpaceModel& space,
                              LocationIndex l, double d1, double d2) {
  const auto range = space.locations_in_range(l, d1, d2);
  std::vector<const BooleanSignal*> parts;
  parts.reserve(range.size());
  for (const auto m : range) parts.push_back(&child[m]);
  return bool_and_all(parts, child[l].horizon());
}

namespace {

constexpr std::size_t no_slot = static_cast<std::size_t>(-1);

/// The surround fixed point for one instant. `slot` maps global locations to
/// ball positions (no_slot outside), v/q are indexed by ball position.
bool surround_instant(const SpaceModel& space, const LocationSet& ball,
                      const std::vector<std::size_t>& slot, std::vector<char> v,
                      const std::vector<char>& q, LocationIndex l) {
  std::vector<char> queued(space.size(), 0);
  std::vector<LocationIndex> w;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    if (!v[i] && !q[i]) continue;
    for (const auto& nb : space.neighbours(ball[i])) {
      const auto s = slot[nb.location];
      const bool inside = s != no_slot && (v[s] || q[s]);
      if (!inside && !queued[nb.location]) {
        queued[nb.location] = 1;
        w.push_back(nb.location);
      }
    }
  }
  while (!w.empty()) {
    std::vector<LocationIndex> next;
    for (const auto x : w) {
      for (const auto& nb : space.neighbours(x)) {
        const auto s = slot[nb.location];
        if (s == no_slot || !v[s]) continue;
        v[s] = 0;
        if (!q[s] && !queued[nb.location]) {
          queued[nb.location] = 1;
          next.push_back(nb.location);
        }
      }
    }
    w = std::move(next);
  }
  return v[slot[l]] != 0;
}

} // namespace

BooleanSignal bool_surround(std::span<const BooleanSignal> phi1, std::span<const BooleanSignal> phi2,
                            const SpaceModel& space, LocationIndex l, double d1, double d2) {
  if (phi1.size() != space.size() || phi2.size() != space.size()) {
    throw SignalError("surround operands must cover every location");
  }
  if (!(0.0 <= d1 && d1 <= d2)) throw SpaceError("surround needs 0 <= d1 <= d2");
  const Time horizon = phi1[l].horizon();
  const auto ball = space.locations_in_range(l, 0.0, d2);
  std::vector<std::size_t> slot(space.size(), no_slot);
  std::vector<char> outer(ball.size());
  std::vector<const BooleanSignal*> involved;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    slot[ball[i]] = i;
    const double d = space.distance(l, ball[i]);
    outer[i] = d1 <= d && d <= d2;
    involved.push_back(&phi1[ball[i]]);
    involved.push_back(&phi2[ball[i]]);
  }
  const auto cover = joint_covering(involved, horizon);

  std::vector<Interval> positive;
  std::vector<char> v(ball.size()), q(ball.size());
  for (std::size_t c = 0; c + 1 < cover.size(); ++c) {
    const Time& t = cover[c];
    for (std::size_t i = 0; i < ball.size(); ++i) {
      v[i] = phi1[ball[i]].value_at(t);
      q[i] = outer[i] && phi2[ball[i]].value_at(t);
    }
    if (v[slot[l]] && surround_instant(space, ball, slot, v, q, l)) {
      positive.push_back({cover[c], cover[c + 1]});
    }
  }
  return BooleanSignal(horizon, std::move(positive));
}

bool brute_force_bool_surround(const std::vector<bool>& phi1, const std::vector<bool>& phi2,
                               const SpaceModel& space, LocationIndex l, double d1, double d2) {
  const auto ball = space.locations_in_range(l, 0.0, d2);
  if (ball.size() > 20) throw std::length_error("surround ball larger than 20 locations");
  const auto self = static_cast<std::size_t>(std::find(ball.begin(), ball.end(), l) - ball.begin());
  std::vector<LocationIndex> area;
  for (std::uint32_t mask = 0; mask < (1u << ball.size()); ++mask) {
    if (!(mask & (1u << self))) continue;
    area.clear();
    bool ok = true;
    for (std::size_t i = 0; i < ball.size() && ok; ++i) {
      if (mask & (1u << i)) {
        area.push_back(ball[i]);
        ok = phi1[ball[i]];
      }
    }
    if (!ok) continue;
    for (const auto b : space.external_boundary(area)) {
      const double d = space.distance(l, b);
      if (!(d1 <= d && d <= d2 && phi2[b])) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

namespace {

class BoolEvaluator {
public:
  BoolEvaluator(const Trace& trace, const SpaceModel& space, const MonitorOptions& options)
      : trace_(trace), space_(space), options_(options),
        horizon_(trace.step() * Time(static_cast<std::int64_t>(trace.samples()))) {}

  const std::vector<BooleanSignal>& eval(const Formula& f) {
    if (const auto it = memo_.find(f.get()); it != memo_.end()) return it->second;
    auto result = std::visit([&](const auto& node) { return apply(node); }, *f);
    return memo_.emplace(f.get(), std::move(result)).first->second;
  }

private:
  using Signals = std::vector<BooleanSignal>;

  const Trace& trace_;
  const SpaceModel& space_;
  const MonitorOptions& options_;
  Time horizon_;
  std::unordered_map<const FormulaNode*, Signals> memo_;

  template <class Fn>
  Signals per_location(Fn&& fn) {
    Signals out(space_.size());
    detail::parallel_for(space_.size(), options_.jobs,
                         [&](unsigned, std::size_t l) { out[l] = fn(l); });
    return out;
  }

  Signals apply(const Constant& c) {
    return Signals(space_.size(), BooleanSignal::constant(horizon_, c.value));
  }

  Signals apply(const Atom& a) {
    const detail::CompiledAtom atom(a, trace_);
    return per_location([&](std::size_t l) {
      std::vector<Interval> positive;
      for (std::size_t k = 0; k < trace_.samples(); ++k) {
        if (atom.holds(trace_.sample(l, k))) {
          const Time begin = trace_.step() * Time(static_cast<std::int64_t>(k));
          positive.push_back({begin, begin + trace_.step()});
        }
      }
      return BooleanSignal(horizon_, std::move(positive));
    });
  }

  Signals apply(const Not& n) {
    const auto& a = eval(n.arg);
    return per_location([&](std::size_t l) { return bool_not(a[l]); });
  }

  Signals apply(const And& n) {
    const auto& a = eval(n.lhs);
    const auto& b = eval(n.rhs);
    return per_location([&](std::size_t l) { return bool_and(a[l], b[l]); });
  }

  Signals apply(const Or& n) {
    const auto& a = eval(n.lhs);
    const auto& b = eval(n.rhs);
    return per_location([&](std::size_t l) { return bool_or(a[l], b[l]); });
  }

  Signals apply(const Until& n) {
    const auto& a = eval(n.lhs);
    const auto& b = eval(n.rhs);
    return per_location(
        [&](std::size_t l) { return bool_until(a[l], b[l], n.bounds.lo, n.bounds.hi); });
  }

  Signals apply(const Eventually& n) {
    const auto& a = eval(n.arg);
    const auto top = BooleanSignal::constant(horizon_, true);
    return per_location(
        [&](std::size_t l) { return bool_until(top, a[l], n.bounds.lo, n.bounds.hi); });
  }

  Signals apply(const Globally& n) {
    const auto& a = eval(n.arg);
    const auto top = BooleanSignal::constant(horizon_, true);
    return per_location([&](std::size_t l) {
      return bool_not(bool_until(top, bool_not(a[l]), n.bounds.lo, n.bounds.hi));
    });
  }

  Signals apply(const Somewhere& n) {
    const auto& a = eval(n.arg);
    return per_location(
        [&](std::size_t l) { return bool_somewhere(a, space_, l, n.bounds.lo, n.bounds.hi); });
  }

  Signals apply(const Everywhere& n) {
    const auto& a = eval(n.arg);
    return per_location(
        [&](std::size_t l) { return bool_everywhere(a, space_, l, n.bounds.lo, n.bounds.hi); });
  }

  Signals apply(const Surround& n) {
    const auto& a = eval(n.lhs);
    const auto& b = eval(n.rhs);
    return per_location([&](std::size_t l) {
      auto result = bool_surround(a, b, space_, l, n.bounds.lo, n.bounds.hi);
      if (options_.oracle) check_oracle(result, a, b, l, n.bounds);
      return result;
    });
  }

  void check_oracle(const BooleanSignal& result, const Signals& a, const Signals& b,
                    LocationIndex l, const DistanceBounds& bounds) const {
    if (space_.locations_in_range(l, 0.0, bounds.hi).size() > 20) return;
    std::vector<const BooleanSignal*> all;
    for (const auto& s : a) all.push_back(&s);
    for (const auto& s : b) all.push_back(&s);
    const auto cover = joint_covering(all, horizon_);
    std::vector<bool> p1(space_.size()), p2(space_.size());
    for (std::size_t c = 0; c + 1 < cover.size(); ++c) {
      for (std::size_t m = 0; m < space_.size(); ++m) {
        p1[m] = a[m].value_at(cover[c]);
        p2[m] = b[m].value_at(cover[c]);
      }
      if (brute_force_bool_surround(p1, p2, space_, l, bounds.lo, bounds.hi) !=
          result.value_at(cover[c])) {
        throw std::logic_error("surround oracle mismatch at location '" + space_.id(l) +
                               "', t = " + to_string(cover[c]));
      }
    }
  }
};

} // namespace

BoolResult monitor_bool(const Formula& formula, const Trace& trace, const SpaceModel& space,
                        const MonitorOptions& options) {
  detail::check_inputs(formula, trace, space);
  BoolEvaluator evaluator(trace, space, options);
  BoolResult result;
  result.signals = evaluator.eval(formula);
  result.satisfied_at_zero.reserve(result.signals.size());
  for (const auto& s : result.signals) result.satisfied_at_zero.push_back(s.value_at(Time(0)));
  return result;
}

} // namespace sstl
