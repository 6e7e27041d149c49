#pragma once

// Reference evaluators used by the tests. Each one works straight from the
// semantic definition and shares no code path with the library routine it
// checks: distances by Floyd-Warshall or simple-path enumeration, until by
// sampling every interval of the dense time line, surround by enumerating
// subsets.

#include "sstl/extended_real.hpp"
#include "sstl/signals.hpp"
#include "sstl/space.hpp"
#include "sstl/time.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using sstl::ExtReal;
using sstl::Time;

inline constexpr double inf = std::numeric_limits<double>::infinity();

/// Plain adjacency-matrix graph built from an edge list.
struct Graph {
  std::size_t n = 0;
  std::vector<std::vector<double>> w;  // inf when no edge

  explicit Graph(const sstl::SpaceModel& space) : n(space.size()) {
    w.assign(n, std::vector<double>(n, inf));
    for (const auto& e : space.edges()) {
      const auto a = *space.find(e.from);
      const auto b = *space.find(e.to);
      w[a][b] = w[b][a] = e.weight;
    }
  }

  bool adjacent(std::size_t a, std::size_t b) const { return w[a][b] < inf; }
};

inline std::vector<std::vector<double>> floyd_warshall(const Graph& g) {
  auto d = g.w;
  for (std::size_t i = 0; i < g.n; ++i) d[i][i] = 0.0;
  for (std::size_t k = 0; k < g.n; ++k)
    for (std::size_t i = 0; i < g.n; ++i)
      for (std::size_t j = 0; j < g.n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

/// Minimum weight over all simple paths from a to b.
inline double simple_path_distance(const Graph& g, std::size_t a, std::size_t b) {
  double best = a == b ? 0.0 : inf;
  std::vector<char> seen(g.n, 0);
  std::function<void(std::size_t, double)> walk = [&](std::size_t at, double len) {
    if (at == b) {
      best = std::min(best, len);
      return;
    }
    seen[at] = 1;
    for (std::size_t nx = 0; nx < g.n; ++nx) {
      if (g.adjacent(at, nx) && !seen[nx]) walk(nx, len + g.w[at][nx]);
    }
    seen[at] = 0;
  };
  if (a != b) walk(a, 0.0);
  return best;
}

inline bool holds(const sstl::BooleanSignal& s, const Time& t) {
  if (t < Time(0) || t >= s.horizon()) return false;
  for (const auto& iv : s.positive())
    if (iv.begin <= t && t < iv.end) return true;
  return false;
}

/// Points and cell midpoints of the partition of [lo, hi] induced by `cuts`.
inline std::vector<Time> probe_points(const Time& lo, const Time& hi, std::vector<Time> cuts) {
  cuts.push_back(lo);
  cuts.push_back(hi);
  std::set<Time> inside;
  for (const auto& c : cuts)
    if (lo <= c && c <= hi) inside.insert(c);
  std::vector<Time> pts(inside.begin(), inside.end());
  std::vector<Time> out = pts;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) out.push_back((pts[i] + pts[i + 1]) / Time(2));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Time> endpoints(const sstl::BooleanSignal& s) {
  std::vector<Time> out{Time(0), s.horizon()};
  for (const auto& iv : s.positive()) {
    out.push_back(iv.begin);
    out.push_back(iv.end);
  }
  return out;
}

/// exists t' in t + [t1, t2] with s2(t') and s1 on all of [t, t'].
inline bool dense_until(const sstl::BooleanSignal& s1, const sstl::BooleanSignal& s2,
                        const Time& t1, const Time& t2, const Time& t) {
  auto cuts = endpoints(s1);
  const auto c2 = endpoints(s2);
  cuts.insert(cuts.end(), c2.begin(), c2.end());
  for (const auto& tp : probe_points(t + t1, t + t2, cuts)) {
    if (!holds(s2, tp)) continue;
    bool ok = true;
    for (const auto& tpp : probe_points(t, tp, endpoints(s1))) ok = ok && holds(s1, tpp);
    if (ok) return true;
  }
  return false;
}

/// Query times that exercise every cell on which the until result can change.
inline std::vector<Time> until_probe_times(const sstl::BooleanSignal& s1,
                                           const sstl::BooleanSignal& s2, const Time& t1,
                                           const Time& t2) {
  std::vector<Time> cuts;
  for (const auto* s : {&s1, &s2}) {
    for (const auto& e : endpoints(*s)) {
      cuts.push_back(e);
      cuts.push_back(e - t1);
      cuts.push_back(e - t2);
    }
  }
  auto pts = probe_points(Time(0), s1.horizon(), cuts);
  pts.erase(std::remove(pts.begin(), pts.end(), s1.horizon()), pts.end());
  return pts;
}

/// out[k] = max_{k' in [k+lo, k+hi]} min(r2[k'], min_{k'' in [k, k']} r1[k'']), k + hi < n.
inline std::vector<ExtReal> triple_loop_until(const std::vector<ExtReal>& r1,
                                              const std::vector<ExtReal>& r2, std::size_t lo,
                                              std::size_t hi) {
  std::vector<ExtReal> out;
  for (std::size_t k = 0; k + hi < r1.size(); ++k) {
    ExtReal best = ExtReal::neg_inf();
    for (std::size_t kp = k + lo; kp <= k + hi; ++kp) {
      ExtReal m = r2[kp];
      for (std::size_t kpp = k; kpp <= kp; ++kpp) m = sstl::min(m, r1[kpp]);
      best = sstl::max(best, m);
    }
    out.push_back(best);
  }
  return out;
}

/// Subsets A with l in A drawn from the locations within d2 of l; boundary
/// computed from the adjacency matrix.
template <class Visit>
void for_each_area(const Graph& g, const std::vector<std::vector<double>>& d, std::size_t l,
                   double d2, Visit&& visit) {
  std::vector<std::size_t> ball;
  for (std::size_t m = 0; m < g.n; ++m)
    if (d[l][m] <= d2) ball.push_back(m);
  std::vector<char> in(g.n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ball.size()); ++mask) {
    std::fill(in.begin(), in.end(), 0);
    for (std::size_t i = 0; i < ball.size(); ++i)
      if (mask >> i & 1) in[ball[i]] = 1;
    if (!in[l]) continue;
    std::vector<std::size_t> area, boundary;
    for (std::size_t m = 0; m < g.n; ++m) {
      if (in[m]) {
        area.push_back(m);
        continue;
      }
      for (std::size_t a = 0; a < g.n; ++a) {
        if (in[a] && g.adjacent(a, m)) {
          boundary.push_back(m);
          break;
        }
      }
    }
    visit(area, boundary);
  }
}

inline bool brute_bool_surround(const Graph& g, const std::vector<std::vector<double>>& d,
                                const std::vector<bool>& p1, const std::vector<bool>& p2,
                                std::size_t l, double d1, double d2) {
  bool found = false;
  for_each_area(g, d, l, d2, [&](const auto& area, const auto& boundary) {
    if (found) return;
    for (auto a : area)
      if (!p1[a]) return;
    for (auto b : boundary)
      if (!(p2[b] && d1 <= d[l][b] && d[l][b] <= d2)) return;
    found = true;
  });
  return found;
}

inline ExtReal brute_quant_surround(const Graph& g, const std::vector<std::vector<double>>& d,
                                    const std::vector<ExtReal>& r1, const std::vector<ExtReal>& r2,
                                    std::size_t l, double d1, double d2) {
  ExtReal best = ExtReal::neg_inf();
  for_each_area(g, d, l, d2, [&](const auto& area, const auto& boundary) {
    ExtReal v = ExtReal::pos_inf();
    for (auto a : area) v = sstl::min(v, r1[a]);
    for (auto b : boundary)
      v = sstl::min(v, (d1 <= d[l][b] && d[l][b] <= d2) ? r2[b] : ExtReal::neg_inf());
    best = sstl::max(best, v);
  });
  return best;
}

// ---------------------------------------------------------------------------
// Random inputs

/// Random graph on n nodes: each pair joined with probability p, integer
/// weights in [1, max_weight].
inline sstl::SpaceModel random_graph(std::mt19937_64& rng, std::size_t n, double p,
                                     int max_weight = 3) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("n" + std::to_string(i));
  std::vector<sstl::Edge> edges;
  std::bernoulli_distribution coin(p);
  std::uniform_int_distribution<int> weight(1, max_weight);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) edges.push_back({ids[i], ids[j], static_cast<double>(weight(rng))});
  return sstl::SpaceModel(ids, edges);
}

/// Random Boolean signal on [0, horizon) with endpoints on a grid of `step`.
inline sstl::BooleanSignal random_signal(std::mt19937_64& rng, const Time& horizon,
                                         const Time& step) {
  const auto cells = static_cast<std::size_t>((horizon / step).numerator() / (horizon / step).denominator());
  std::bernoulli_distribution coin(0.5);
  std::vector<sstl::Interval> pos;
  for (std::size_t k = 0; k < cells; ++k) {
    if (coin(rng)) {
      const Time b = step * Time(static_cast<std::int64_t>(k));
      pos.push_back({b, b + step});
    }
  }
  return sstl::BooleanSignal(horizon, pos);
}

/// Random extended real from a small integer pool, with +-inf.
inline ExtReal random_value(std::mt19937_64& rng, int range = 5, double inf_share = 0.1) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double x = u(rng);
  if (x < inf_share / 2) return ExtReal::neg_inf();
  if (x < inf_share) return ExtReal::pos_inf();
  std::uniform_int_distribution<int> v(-range, range);
  return ExtReal(static_cast<double>(v(rng)));
}

} // namespace oracle
