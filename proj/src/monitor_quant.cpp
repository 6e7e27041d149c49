#include "sstl/monitor_quant.hpp"

#include "monitor_common.hpp"
#include "parallel.hpp"
#include "sstl/errors.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace sstl {

namespace {

constexpr std::size_t no_slot = static_cast<std::size_t>(-1);

/// Fixed-point iteration over a region of the graph. Locations outside the
/// region are treated as constant -inf in both the iterate and s2.
class SurroundKernel {
public:
  SurroundKernel(const SpaceModel& space, LocationIndex l, double d1, double d2,
                 SurroundStrategy strategy)
      : space_(space) {
    if (!(0.0 <= d1 && d1 <= d2)) throw SpaceError("surround needs 0 <= d1 <= d2");
    const auto ball = space.locations_in_range(l, 0.0, d2);
    if (strategy == SurroundStrategy::Full) {
      nodes_.resize(space.size());
      for (std::size_t i = 0; i < nodes_.size(); ++i) nodes_[i] = i;
    } else {
      nodes_ = ball;
    }
    std::vector<std::size_t> slot(space.size(), no_slot);
    for (std::size_t i = 0; i < nodes_.size(); ++i) slot[nodes_[i]] = i;
    self_ = slot[l];
    adjacency_.resize(nodes_.size());
    blocked_.assign(nodes_.size(), 0);
    in_ball_.assign(nodes_.size(), 0);
    in_outer_.assign(nodes_.size(), 0);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      for (const auto& nb : space.neighbours(nodes_[i])) {
        if (slot[nb.location] == no_slot) {
          blocked_[i] = 1;
        } else {
          adjacency_[i].push_back(slot[nb.location]);
        }
      }
      const double d = space.distance(l, nodes_[i]);
      in_ball_[i] = d <= d2;
      in_outer_[i] = d1 <= d && d <= d2;
    }
    bound_ = nodes_.size();
    x_.resize(nodes_.size());
    next_.resize(nodes_.size());
    s2_.resize(nodes_.size());
  }

  const std::vector<LocationIndex>& nodes() const noexcept { return nodes_; }

  /// `value(m)` gives (r1, r2) at global location m.
  template <class Values>
  ExtReal solve(Values&& value, SurroundStats* stats) {
    const ExtReal neg_inf = ExtReal::neg_inf();
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const auto [r1, r2] = value(nodes_[i]);
      x_[i] = in_ball_[i] ? r1 : neg_inf;
      s2_[i] = in_outer_[i] ? r2 : neg_inf;
    }
    std::size_t iterations = 0;
    for (;;) {
      bool changed = false;
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        ExtReal v = blocked_[i] ? neg_inf : x_[i];
        for (const auto j : adjacency_[i]) {
          if (v == neg_inf) break;
          v = min(v, max(x_[j], s2_[j]));
        }
        if (x_[i] < v) throw std::logic_error("surround iteration is not monotone");
        changed = changed || v != x_[i];
        next_[i] = v;
      }
      if (!changed) break;
      if (++iterations > bound_) {
        throw std::logic_error("surround iteration did not converge");
      }
      x_.swap(next_);
    }
    if (stats) stats->iterations = iterations;
    return x_[self_];
  }

private:
  const SpaceModel& space_;
  std::size_t bound_ = 0;
  std::vector<LocationIndex> nodes_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<char> blocked_;
  std::vector<char> in_ball_;
  std::vector<char> in_outer_;
  std::size_t self_ = 0;
  std::vector<ExtReal> x_, next_, s2_;
};

} // namespace

ExtReal quant_surround(std::span<const ExtReal> r1, std::span<const ExtReal> r2,
                       const SpaceModel& space, LocationIndex l, double d1, double d2,
                       SurroundStats* stats, SurroundStrategy strategy) {
  if (r1.size() != space.size() || r2.size() != space.size()) {
    throw SignalError("surround operands must cover every location");
  }
  SurroundKernel kernel(space, l, d1, d2, strategy);
  return kernel.solve([&](LocationIndex m) { return std::pair{r1[m], r2[m]}; }, stats);
}

ExtReal brute_force_surround(std::span<const ExtReal> r1, std::span<const ExtReal> r2,
                             const SpaceModel& space, LocationIndex l, double d1, double d2) {
  const auto ball = space.locations_in_range(l, 0.0, d2);
  if (ball.size() > 20) throw std::length_error("surround ball larger than 20 locations");
  const auto self = static_cast<std::size_t>(std::find(ball.begin(), ball.end(), l) - ball.begin());
  ExtReal best = ExtReal::neg_inf();
  std::vector<LocationIndex> area;
  for (std::uint32_t mask = 0; mask < (1u << ball.size()); ++mask) {
    if (!(mask & (1u << self))) continue;
    area.clear();
    ExtReal value = ExtReal::pos_inf();
    for (std::size_t i = 0; i < ball.size(); ++i) {
      if (mask & (1u << i)) {
        area.push_back(ball[i]);
        value = min(value, r1[ball[i]]);
      }
    }
    for (const auto b : space.external_boundary(area)) {
      const double d = space.distance(l, b);
      value = min(value, (d1 <= d && d <= d2) ? r2[b] : ExtReal::neg_inf());
    }
    best = max(best, value);
  }
  return best;
}

namespace {

class QuantEvaluator {
public:
  QuantEvaluator(const Trace& trace, const SpaceModel& space, const MonitorOptions& options)
      : trace_(trace), space_(space), options_(options) {}

  const std::vector<QuantSignal>& eval(const Formula& f) {
    if (const auto it = memo_.find(f.get()); it != memo_.end()) return it->second;
    auto result = std::visit([&](const auto& node) { return apply(node); }, *f);
    return memo_.emplace(f.get(), std::move(result)).first->second;
  }

  std::vector<std::string> warnings;

private:
  using Signals = std::vector<QuantSignal>;

  const Trace& trace_;
  const SpaceModel& space_;
  const MonitorOptions& options_;
  std::unordered_map<const FormulaNode*, Signals> memo_;

  template <class Fn>
  Signals per_location(Fn&& fn) {
    Signals out(space_.size());
    detail::parallel_for(space_.size(), options_.jobs,
                         [&](unsigned, std::size_t l) { out[l] = fn(l); });
    return out;
  }

  static std::size_t length(const Signals& s) { return s.empty() ? 0 : s[0].size(); }

  static QuantSignal fit(const QuantSignal& s, std::size_t n) {
    return s.size() == n ? s : s.prefix(n);
  }

  GridWindow window(const TimeBounds& b) {
    const auto w = snap_window(b.lo, b.hi, trace_.step());
    if (w.snapped) {
      const std::string note = "time bounds [" + to_string(b.lo) + "," + to_string(b.hi) +
                               "] snapped to grid steps [" + std::to_string(w.lo) + "," +
                               std::to_string(w.hi) + "] of " + to_string(trace_.step());
      if (std::find(warnings.begin(), warnings.end(), note) == warnings.end()) {
        warnings.push_back(note);
      }
    }
    return w;
  }

  Signals apply(const Constant& c) {
    const ExtReal v = c.value ? ExtReal::pos_inf() : ExtReal::neg_inf();
    return Signals(space_.size(), QuantSignal::constant(trace_.step(), trace_.samples(), v));
  }

  Signals apply(const Atom& a) {
    const detail::CompiledAtom atom(a, trace_);
    return per_location([&](std::size_t l) {
      std::vector<ExtReal> values(trace_.samples());
      for (std::size_t k = 0; k < trace_.samples(); ++k) {
        values[k] = ExtReal(atom.value(trace_.sample(l, k)));
      }
      return QuantSignal(trace_.step(), std::move(values));
    });
  }

  Signals apply(const Not& n) {
    const auto& a = eval(n.arg);
    return per_location([&](std::size_t l) { return quant_neg(a[l]); });
  }

  Signals apply(const And& n) {
    const auto& a = eval(n.lhs);
    const auto& b = eval(n.rhs);
    const std::size_t len = std::min(length(a), length(b));
    return per_location([&](std::size_t l) { return quant_min(fit(a[l], len), fit(b[l], len)); });
  }

  Signals apply(const Or& n) {
    const auto& a = eval(n.lhs);
    const auto& b = eval(n.rhs);
    const std::size_t len = std::min(length(a), length(b));
    return per_location([&](std::size_t l) { return quant_max(fit(a[l], len), fit(b[l], len)); });
  }

  Signals apply(const Until& n) {
    const auto& a = eval(n.lhs);
    const auto& b = eval(n.rhs);
    const std::size_t len = std::min(length(a), length(b));
    const auto w = window(n.bounds);
    return per_location(
        [&](std::size_t l) { return quant_until(fit(a[l], len), fit(b[l], len), w); });
  }

  Signals apply(const Eventually& n) {
    const auto& a = eval(n.arg);
    const auto w = window(n.bounds);
    const auto top = QuantSignal::constant(trace_.step(), length(a), ExtReal::pos_inf());
    return per_location([&](std::size_t l) { return quant_until(top, a[l], w); });
  }

  Signals apply(const Globally& n) {
    const auto& a = eval(n.arg);
    const auto w = window(n.bounds);
    const auto top = QuantSignal::constant(trace_.step(), length(a), ExtReal::pos_inf());
    return per_location(
        [&](std::size_t l) { return quant_neg(quant_until(top, quant_neg(a[l]), w)); });
  }

  template <bool IsMax>
  Signals spatial(const Formula& arg, const DistanceBounds& b) {
    const auto& a = eval(arg);
    const std::size_t len = length(a);
    return per_location([&](std::size_t l) {
      const auto range = space_.locations_in_range(l, b.lo, b.hi);
      std::vector<ExtReal> values(len, IsMax ? ExtReal::neg_inf() : ExtReal::pos_inf());
      for (const auto m : range) {
        for (std::size_t k = 0; k < len; ++k) {
          values[k] = IsMax ? max(values[k], a[m][k]) : min(values[k], a[m][k]);
        }
      }
      return QuantSignal(trace_.step(), std::move(values));
    });
  }

  Signals apply(const Somewhere& n) { return spatial<true>(n.arg, n.bounds); }
  Signals apply(const Everywhere& n) { return spatial<false>(n.arg, n.bounds); }

  Signals apply(const Surround& n) {
    const auto& a = eval(n.lhs);
    const auto& b = eval(n.rhs);
    const std::size_t len = std::min(length(a), length(b));
    const double d1 = n.bounds.lo;
    const double d2 = n.bounds.hi;
    return per_location([&](std::size_t l) {
      SurroundKernel kernel(space_, l, d1, d2, options_.surround);
      const bool check =
          options_.oracle && space_.locations_in_range(l, 0.0, d2).size() <= 20;
      std::vector<ExtReal> values(len);
      std::vector<ExtReal> r1, r2;
      if (check) {
        r1.resize(space_.size());
        r2.resize(space_.size());
      }
      for (std::size_t k = 0; k < len; ++k) {
        values[k] = kernel.solve([&](LocationIndex m) { return std::pair{a[m][k], b[m][k]}; },
                                 nullptr);
        if (check) {
          for (std::size_t m = 0; m < space_.size(); ++m) {
            r1[m] = a[m][k];
            r2[m] = b[m][k];
          }
          if (brute_force_surround(r1, r2, space_, l, d1, d2) != values[k]) {
            throw std::logic_error("surround oracle mismatch at location '" + space_.id(l) +
                                   "', sample " + std::to_string(k));
          }
        }
      }
      return QuantSignal(trace_.step(), std::move(values));
    });
  }
};

} // namespace

QuantResult monitor_quant(const Formula& formula, const Trace& trace, const SpaceModel& space,
                          const MonitorOptions& options) {
  detail::check_inputs(formula, trace, space);
  if (has_equality(formula)) {
    throw EvaluationError("'==' atoms have no quantitative semantics; use boolean mode");
  }
  QuantEvaluator evaluator(trace, space, options);
  QuantResult result;
  result.signals = evaluator.eval(formula);
  for (const auto& s : result.signals) {
    if (s.size() == 0) throw HorizonError("formula consumes the whole trace");
    result.robustness_at_zero.push_back(s[0]);
  }
  result.warnings = std::move(evaluator.warnings);
  return result;
}

void write_robustness_csv(const QuantResult& result, const SpaceModel& space, std::ostream& out) {
  out << "location,robustness\n";
  for (std::size_t l = 0; l < result.robustness_at_zero.size(); ++l) {
    out << space.id(l) << ',' << to_string(result.robustness_at_zero[l]) << '\n';
  }
}

void write_robustness_dump(const QuantResult& result, const SpaceModel& space, std::ostream& out) {
  out << "location,t,value\n";
  for (std::size_t l = 0; l < result.signals.size(); ++l) {
    const auto& s = result.signals[l];
    for (std::size_t k = 0; k < s.size(); ++k) {
      out << space.id(l) << ',' << to_string(s.step() * Time(static_cast<std::int64_t>(k))) << ','
          << to_string(s[k]) << '\n';
    }
  }
}

void write_satisfaction_csv(const BoolResult& result, const SpaceModel& space, std::ostream& out) {
  out << "location,satisfied\n";
  for (std::size_t l = 0; l < result.satisfied_at_zero.size(); ++l) {
    out << space.id(l) << ',' << (result.satisfied_at_zero[l] ? 1 : 0) << '\n';
  }
}

} // namespace sstl
