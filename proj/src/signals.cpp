#include "sstl/signals.hpp"

#include "sstl/errors.hpp"

#include <algorithm>
#include <ostream>

namespace sstl {

namespace {

void require_same_horizon(const BooleanSignal& a, const BooleanSignal& b) {
  if (a.horizon() != b.horizon()) {
    throw SignalError("Boolean signals have different horizons (" + to_string(a.horizon()) +
                      " vs " + to_string(b.horizon()) + ")");
  }
}

void require_same_grid(const QuantSignal& a, const QuantSignal& b) {
  if (a.step() != b.step() || a.size() != b.size()) {
    throw SignalError("quantitative signals live on different grids");
  }
}

} // namespace

BooleanSignal::BooleanSignal(Time horizon, std::vector<Interval> positive)
    : horizon_(horizon) {
  if (horizon <= Time(0)) throw SignalError("signal horizon must be positive");
  for (auto& iv : positive) {
    iv.begin = std::max(iv.begin, Time(0));
    iv.end = std::min(iv.end, horizon);
  }
  std::erase_if(positive, [](const Interval& iv) { return !(iv.begin < iv.end); });
  std::sort(positive.begin(), positive.end(),
            [](const Interval& a, const Interval& b) { return a.begin < b.begin; });
  for (const auto& iv : positive) {
    if (!positive_.empty() && iv.begin <= positive_.back().end) {
      positive_.back().end = std::max(positive_.back().end, iv.end);
    } else {
      positive_.push_back(iv);
    }
  }
}

BooleanSignal BooleanSignal::constant(Time horizon, bool value) {
  if (!value) return BooleanSignal(horizon, {});
  return BooleanSignal(horizon, {{Time(0), horizon}});
}

bool BooleanSignal::value_at(const Time& t) const {
  auto it = std::upper_bound(positive_.begin(), positive_.end(), t,
                             [](const Time& x, const Interval& iv) { return x < iv.begin; });
  if (it == positive_.begin()) return false;
  --it;
  return t < it->end;
}

BooleanSignal bool_not(const BooleanSignal& s) {
  std::vector<Interval> out;
  Time cursor(0);
  for (const auto& iv : s.positive()) {
    if (cursor < iv.begin) out.push_back({cursor, iv.begin});
    cursor = iv.end;
  }
  if (cursor < s.horizon()) out.push_back({cursor, s.horizon()});
  return BooleanSignal(s.horizon(), std::move(out));
}

BooleanSignal bool_or(const BooleanSignal& a, const BooleanSignal& b) {
  require_same_horizon(a, b);
  std::vector<Interval> all(a.positive().begin(), a.positive().end());
  all.insert(all.end(), b.positive().begin(), b.positive().end());
  return BooleanSignal(a.horizon(), std::move(all));
}

BooleanSignal bool_and(const BooleanSignal& a, const BooleanSignal& b) {
  require_same_horizon(a, b);
  std::vector<Interval> out;
  const auto pa = a.positive();
  const auto pb = b.positive();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < pa.size() && j < pb.size()) {
    const Time lo = std::max(pa[i].begin, pb[j].begin);
    const Time hi = std::min(pa[i].end, pb[j].end);
    if (lo < hi) out.push_back({lo, hi});
    if (pa[i].end < pb[j].end) {
      ++i;
    } else {
      ++j;
    }
  }
  return BooleanSignal(a.horizon(), std::move(out));
}

BooleanSignal bool_or_all(std::span<const BooleanSignal* const> signals, Time horizon) {
  std::vector<Interval> all;
  for (const auto* s : signals) {
    if (s->horizon() != horizon) throw SignalError("Boolean signals have different horizons");
    all.insert(all.end(), s->positive().begin(), s->positive().end());
  }
  return BooleanSignal(horizon, std::move(all));
}

BooleanSignal bool_and_all(std::span<const BooleanSignal* const> signals, Time horizon) {
  // De Morgan keeps this a single sort-and-merge pass.
  std::vector<Interval> negatives;
  for (const auto* s : signals) {
    if (s->horizon() != horizon) throw SignalError("Boolean signals have different horizons");
    const auto neg = bool_not(*s);
    negatives.insert(negatives.end(), neg.positive().begin(), neg.positive().end());
  }
  return bool_not(BooleanSignal(horizon, std::move(negatives)));
}

BooleanSignal bool_until(const BooleanSignal& s1, const BooleanSignal& s2, Time t1, Time t2) {
  require_same_horizon(s1, s2);
  if (t1 < Time(0)) throw SignalError("until lower bound must be nonnegative");
  if (t1 > t2) throw SignalError("until bounds are reversed");
  const Time horizon = s1.horizon();
  std::vector<Interval> out;
  const auto ps = s1.positive();
  const auto qs = s2.positive();
  std::size_t first_q = 0;
  for (const auto& p : ps) {
    while (first_q < qs.size() && qs[first_q].end <= p.begin) ++first_q;
    for (std::size_t j = first_q; j < qs.size() && qs[j].begin < p.end; ++j) {
      const Time m = std::max(p.begin, qs[j].begin);
      const Time n = std::min(p.end, qs[j].end);
      if (!(m < n)) continue;
      Time lo = std::max(m - t2, Time(0));
      Time hi = std::min(n - t1, horizon);
      lo = std::max(lo, p.begin);
      hi = std::min(hi, p.end);
      if (lo < hi) out.push_back({lo, hi});
    }
  }
  return BooleanSignal(horizon, std::move(out));
}

std::vector<Time> joint_covering(std::span<const BooleanSignal* const> signals, Time horizon) {
  std::vector<Time> points{Time(0), horizon};
  for (const auto* s : signals) {
    for (const auto& iv : s->positive()) {
      points.push_back(iv.begin);
      points.push_back(iv.end);
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::erase_if(points, [&](const Time& t) { return t < Time(0) || t > horizon; });
  return points;
}

QuantSignal::QuantSignal(Time step, std::vector<ExtReal> values)
    : step_(step), values_(std::move(values)) {
  if (step <= Time(0)) throw SignalError("signal step must be positive");
}

QuantSignal QuantSignal::constant(Time step, std::size_t length, ExtReal value) {
  return QuantSignal(step, std::vector<ExtReal>(length, value));
}

QuantSignal QuantSignal::prefix(std::size_t n) const {
  if (n > size()) throw SignalError("prefix longer than signal");
  return QuantSignal(step_, std::vector<ExtReal>(values_.begin(), values_.begin() + n));
}

QuantSignal quant_pointwise(PointwiseOp op, const QuantSignal& a, const QuantSignal* b) {
  std::vector<ExtReal> out(a.size());
  if (op == PointwiseOp::Neg) {
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = -a[k];
    return QuantSignal(a.step(), std::move(out));
  }
  if (b == nullptr) throw SignalError("binary pointwise operation needs two operands");
  require_same_grid(a, *b);
  for (std::size_t k = 0; k < a.size(); ++k) {
    out[k] = op == PointwiseOp::Min ? min(a[k], (*b)[k]) : max(a[k], (*b)[k]);
  }
  return QuantSignal(a.step(), std::move(out));
}

QuantSignal quant_neg(const QuantSignal& a) { return quant_pointwise(PointwiseOp::Neg, a); }
QuantSignal quant_min(const QuantSignal& a, const QuantSignal& b) {
  return quant_pointwise(PointwiseOp::Min, a, &b);
}
QuantSignal quant_max(const QuantSignal& a, const QuantSignal& b) {
  return quant_pointwise(PointwiseOp::Max, a, &b);
}

GridWindow snap_window(Time t1, Time t2, Time step) {
  if (t1 < Time(0)) throw SignalError("until lower bound must be nonnegative");
  if (t1 > t2) throw SignalError("until bounds are reversed");
  const auto lo = ceil_div(t1, step);
  const auto hi = floor_div(t2, step);
  if (lo > hi) {
    throw SignalError("interval [" + to_string(t1) + "," + to_string(t2) +
                      "] contains no sampling instant for step " + to_string(step));
  }
  GridWindow w;
  w.lo = static_cast<std::size_t>(lo);
  w.hi = static_cast<std::size_t>(hi);
  w.snapped = Time(lo) * step != t1 || Time(hi) * step != t2;
  return w;
}

QuantSignal quant_until(const QuantSignal& r1, const QuantSignal& r2, Time t1, Time t2) {
  if (r1.step() != r2.step()) throw SignalError("quantitative signals live on different grids");
  return quant_until(r1, r2, snap_window(t1, t2, r1.step()));
}

QuantSignal quant_until(const QuantSignal& r1, const QuantSignal& r2, const GridWindow& window) {
  require_same_grid(r1, r2);
  const std::size_t n = r1.size();
  if (window.hi >= n) {
    throw HorizonError("until window reaches " + std::to_string(window.hi) +
                       " samples ahead but the signal has only " + std::to_string(n));
  }
  std::vector<ExtReal> out(n - window.hi);
  for (std::size_t k = 0; k < out.size(); ++k) {
    ExtReal best = ExtReal::neg_inf();
    ExtReal prefix_min = ExtReal::pos_inf();
    for (std::size_t kk = k; kk <= k + window.hi; ++kk) {
      prefix_min = min(prefix_min, r1[kk]);
      if (kk >= k + window.lo) best = max(best, min(r2[kk], prefix_min));
    }
    out[k] = best;
  }
  return QuantSignal(r1.step(), std::move(out));
}

void write_signal_csv(const BooleanSignal& s, std::ostream& out) {
  out << "t,value\n";
  Time cursor(0);
  for (const auto& iv : s.positive()) {
    if (cursor < iv.begin) out << to_string(cursor) << ",0\n";
    out << to_string(iv.begin) << ",1\n";
    cursor = iv.end;
  }
  if (cursor < s.horizon()) out << to_string(cursor) << ",0\n";
}

void write_signal_csv(const QuantSignal& s, std::ostream& out) {
  out << "t,value\n";
  for (std::size_t k = 0; k < s.size(); ++k) {
    out << to_string(Time(static_cast<std::int64_t>(k)) * s.step()) << ',' << to_string(s[k])
        << '\n';
  }
}

} // namespace sstl
