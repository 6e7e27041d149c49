// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: sstl_acceptance [criterion ...]   (default: all)

#include "oracles.hpp"
#include "sstl/monitor_bool.hpp"
#include "sstl/monitor_quant.hpp"
#include "sstl/parser.hpp"
#include "sstl/smc.hpp"
#include "sstl/turing.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace sstl;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int precision = 3) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

// ---------------------------------------------------------------- surround

std::pair<double, double> random_bounds(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> b(0, 7);
  double d1 = b(rng), d2 = b(rng);
  if (d2 < d1) std::swap(d1, d2);
  if (d2 == 7) d2 = oracle::inf;
  return {d1, d2};
}

Outcome surround_bool() {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> size(1, 8);
  std::uniform_real_distribution<double> density(0.1, 0.8);
  std::bernoulli_distribution coin(0.6);
  std::size_t mismatches = 0;
  const auto start = Clock::now();
  for (int i = 0; i < 500; ++i) {
    const auto s = oracle::random_graph(rng, size(rng), density(rng));
    const oracle::Graph g(s);
    const auto d = oracle::floyd_warshall(g);
    std::vector<bool> v1(s.size()), v2(s.size());
    for (std::size_t l = 0; l < s.size(); ++l) {
      v1[l] = coin(rng);
      v2[l] = coin(rng);
    }
    std::vector<BooleanSignal> p1, p2;
    for (std::size_t l = 0; l < s.size(); ++l) {
      p1.push_back(BooleanSignal::constant(Time(1), v1[l]));
      p2.push_back(BooleanSignal::constant(Time(1), v2[l]));
    }
    const auto [d1, d2] = random_bounds(rng);
    const auto l = std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng);
    const bool got = bool_surround(p1, p2, s, l, d1, d2).value_at(Time(0));
    if (got != oracle::brute_bool_surround(g, d, v1, v2, l, d1, d2)) ++mismatches;
  }
  const double elapsed = seconds_since(start);
  return {mismatches == 0 && elapsed < 10.0,
          "500 instances, " + std::to_string(mismatches) + " mismatches, " + fmt(elapsed) + " s (< 10 s)"};
}

Outcome surround_quant() {
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<std::size_t> size(1, 8);
  std::uniform_real_distribution<double> density(0.1, 0.8);
  std::size_t mismatches = 0, over_bound = 0, over_hops = 0, calls = 0, most = 0;
  for (int i = 0; i < 500; ++i) {
    const auto s = oracle::random_graph(rng, size(rng), density(rng));
    const oracle::Graph g(s);
    const auto d = oracle::floyd_warshall(g);
    std::vector<ExtReal> r1(s.size()), r2(s.size());
    for (auto& v : r1) v = oracle::random_value(rng, 5, 0.2);
    for (auto& v : r2) v = oracle::random_value(rng, 5, 0.2);
    const auto [d1, d2] = random_bounds(rng);
    const auto l = std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng);
    const auto want = oracle::brute_quant_surround(g, d, r1, r2, l, d1, d2);
    for (auto strategy : {SurroundStrategy::Full, SurroundStrategy::Restricted}) {
      SurroundStats stats;
      const auto got = quant_surround(r1, r2, s, l, d1, d2, &stats, strategy);
      ++calls;
      if (got != want) ++mismatches;
      if (static_cast<double>(stats.iterations) > s.diameter() + 1) ++over_bound;
      if (stats.iterations > s.hop_diameter() + 1) ++over_hops;
      most = std::max(most, stats.iterations);
    }
  }
  return {mismatches == 0 && over_bound == 0,
          "500 instances x 2 strategies, " + std::to_string(mismatches) + " mismatches, " +
              std::to_string(over_bound) + "/" + std::to_string(calls) +
              " calls above diameter+1 (" + std::to_string(over_hops) +
              " above hop diameter+1), max iterations " + std::to_string(most)};
}

// ---------------------------------------------------------------- soundness

Trace random_trace(std::mt19937_64& rng, std::size_t locations, std::size_t samples, Time step) {
  Trace t({"x", "y"}, locations, samples, step);
  std::uniform_int_distribution<int> v(-4, 4);
  for (std::size_t l = 0; l < locations; ++l)
    for (std::size_t k = 0; k < samples; ++k) {
      t.at(l, k, 0) = v(rng);
      t.at(l, k, 1) = v(rng) / 2.0;
    }
  return t;
}

Formula random_formula(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 11);
  std::uniform_int_distribution<int> small(0, 4);
  auto atom = [&] {
    const Comparison ops[] = {Comparison::Ge, Comparison::Gt, Comparison::Le, Comparison::Lt};
    Expr lhs = make_variable(small(rng) % 2 ? "x" : "y");
    if (small(rng) == 0) lhs = make_binary(ArithOp::Add, make_variable("x"), make_variable("y"));
    const double c = (small(rng) - 2) + (small(rng) % 2 ? 0.5 : 0.0);
    return make_atom(lhs, ops[small(rng) % 4], make_number(c));
  };
  auto tb = [&] {
    Time a(small(rng), 2), b(small(rng), 2);
    if (b < a) std::swap(a, b);
    return TimeBounds{a, b};
  };
  auto db = [&] {
    double a = small(rng), b = small(rng);
    if (b < a) std::swap(a, b);
    if (small(rng) == 0) b = oracle::inf;
    return DistanceBounds{a, b};
  };
  switch (pick(rng)) {
    case 0:
    case 1: return atom();
    case 2: return make_not(random_formula(rng, depth - 1));
    case 3: return make_and(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 4: return make_or(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 5: return make_until(random_formula(rng, depth - 1), random_formula(rng, depth - 1), tb());
    case 6: return make_eventually(random_formula(rng, depth - 1), tb());
    case 7: return make_globally(random_formula(rng, depth - 1), tb());
    case 8: return make_somewhere(random_formula(rng, depth - 1), db());
    case 9: return make_everywhere(random_formula(rng, depth - 1), db());
    case 10: return make_implies(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    default: return make_surround(random_formula(rng, depth - 1), random_formula(rng, depth - 1), db());
  }
}

Outcome soundness() {
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<std::size_t> size(1, 7);
  const Time step(1, 2);
  const std::size_t samples = 14;
  std::size_t violations = 0, points = 0, zero = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto s = oracle::random_graph(rng, size(rng), 0.4, 2);
    const auto trace = random_trace(rng, s.size(), samples, step);
    Formula f = random_formula(rng, 3);
    while (temporal_depth(f) > trace.end_time()) f = random_formula(rng, 3);
    const auto b = monitor_bool(f, trace, s);
    const auto q = monitor_quant(f, trace, s);
    for (LocationIndex l = 0; l < s.size(); ++l)
      for (std::size_t k = 0; k < q.signals[l].size(); ++k) {
        const int sign = q.signals[l][k].sign();
        if (sign == 0) {
          ++zero;
          continue;
        }
        ++points;
        if (b.signals[l].value_at(step * Time(static_cast<std::int64_t>(k))) != (sign > 0)) ++violations;
      }
  }
  return {violations == 0, "1000 pairs, " + std::to_string(points) + " grid points with rho != 0 (" +
                               std::to_string(zero) + " zeros skipped), " + std::to_string(violations) +
                               " violations"};
}

// ---------------------------------------------------------------- until

Outcome until_oracle() {
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<int> bound(0, 12);
  std::size_t bool_mismatch = 0, probes = 0;
  for (int i = 0; i < 1000; ++i) {
    const Time horizon(8);
    const Time grain = i % 2 ? Time(1, 2) : Time(1, 3);
    const auto s1 = oracle::random_signal(rng, horizon, grain);
    const auto s2 = oracle::random_signal(rng, horizon, grain);
    Time t1(bound(rng), 4), t2(bound(rng), 4);
    if (t2 < t1) std::swap(t1, t2);
    const auto u = bool_until(s1, s2, t1, t2);
    for (const auto& t : oracle::until_probe_times(s1, s2, t1, t2)) {
      ++probes;
      if (u.value_at(t) != oracle::dense_until(s1, s2, t1, t2, t)) ++bool_mismatch;
    }
  }
  std::size_t quant_mismatch = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + i % 20;
    std::vector<ExtReal> r1(n), r2(n);
    for (auto& v : r1) v = oracle::random_value(rng);
    for (auto& v : r2) v = oracle::random_value(rng);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::size_t lo = pick(rng), hi = pick(rng);
    if (hi < lo) std::swap(lo, hi);
    const auto got = quant_until(QuantSignal(Time(1), r1), QuantSignal(Time(1), r2), GridWindow{lo, hi, false});
    const auto want = oracle::triple_loop_until(r1, r2, lo, hi);
    bool same = got.size() == want.size();
    for (std::size_t k = 0; same && k < want.size(); ++k) same = got[k] == want[k];
    if (!same) ++quant_mismatch;
  }
  return {bool_mismatch == 0 && quant_mismatch == 0,
          "boolean: 1000 pairs, " + std::to_string(probes) + " probes, " + std::to_string(bool_mismatch) +
              " mismatches; quantitative: 1000 pairs (length 1..20), " + std::to_string(quant_mismatch) +
              " mismatches"};
}

// ---------------------------------------------------------------- discretisation

Trace sinusoids(const SpaceModel& s, Time end, Time step, double amplitude, double w1, double w2) {
  const auto n = static_cast<std::size_t>(boost::rational_cast<std::int64_t>(end / step)) + 1;
  Trace t({"x", "y"}, s.size(), n, step);
  for (std::size_t l = 0; l < s.size(); ++l)
    for (std::size_t k = 0; k < n; ++k) {
      const double time = boost::rational_cast<double>(step) * static_cast<double>(k);
      t.at(l, k, 0) = amplitude * std::sin(w1 * time + 0.7 * static_cast<double>(l));
      t.at(l, k, 1) = amplitude * std::cos(w2 * time + 1.3 * static_cast<double>(l));
    }
  return t;
}

Outcome discretisation() {
  const char* battery[] = {
      "x > 0.2",
      "F[0,1] x > 0.5",
      "G[0.5,1.5] y < 0.3",
      "(x > -0.5) U[0.25,1] (y > 0.2)",
      "F[0,1] G[0,1] x > 0",
      "somewhere[1,2] F[0,0.5] y > 0",
      "G[0,2] ((x <= 0.3) S[1,2] (x > 0.3))",
      "everywhere[0,2] ((x > -0.8) U[0,1.5] F[0.5,1] (y > 0.5))",
      "!(F[0,1] x > 0.4) | G[0,0.5] y < 0.6",
      "F[0.5,2] ((y >= 0) S[1,2] G[0,0.75] (x < 0))",
  };
  const auto space = regular_grid(3, 1.0);
  const double amplitude = 1.0, w1 = 1.3, w2 = 2.1;
  const double M = amplitude * std::max(w1, w2);
  const Time h(1, 4), end(10);
  const auto coarse = sinusoids(space, end, h, amplitude, w1, w2);
  const auto fine = sinusoids(space, end, h / Time(2), amplitude, w1, w2);
  std::size_t failed = 0;
  double worst = 0.0;
  for (const char* text : battery) {
    const auto f = parse_formula(text);
    const double bound = static_cast<double>(until_count(f)) * M * 1.5 * boost::rational_cast<double>(h);
    const auto a = monitor_quant(f, coarse, space);
    const auto b = monitor_quant(f, fine, space);
    double gap = 0.0;
    for (LocationIndex l = 0; l < space.size(); ++l)
      for (std::size_t k = 0; k < a.signals[l].size(); ++k) {
        const auto x = a.signals[l][k], y = b.signals[l][2 * k];
        if (x == y) continue;
        gap = std::max(gap, (x.is_finite() && y.is_finite()) ? std::abs(x.to_double() - y.to_double())
                                                             : oracle::inf);
      }
    if (gap > bound + 1e-9) ++failed;
    if (bound > 0) worst = std::max(worst, gap / bound);
  }
  return {failed == 0, "10 formulas, M = " + fmt(M) + ", h = 0.25, " + std::to_string(failed) +
                           " above u*M*1.5h, worst gap/bound " + fmt(worst)};
}

// ---------------------------------------------------------------- reaction-diffusion

Outcome turing() {
  const auto script = read_script(SSTL_DATA_DIR "/turing.sstl");
  const auto& pattern = script.get("phi_pattern");
  const auto& formation = script.get("phi_spotFormation");
  std::size_t pattern_true = 0, mean_ok = 0, weak_negative = 0;
  double slowest = 0.0;
  std::string means, bad;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto start = Clock::now();
    TuringParams p;
    p.seed = seed;
    const auto space = turing_space(p);
    const auto probe = space.index_of(grid_id(16, 16));
    const auto trace = simulate_turing(p);
    if (monitor_bool(pattern, trace, space).satisfied_at_zero[probe]) ++pattern_true;
    const auto q = monitor_quant(formation, trace, space);
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& v : q.robustness_at_zero)
      if (v.sign() > 0 && v.is_finite()) {
        sum += v.to_double();
        ++count;
      }
    const double mean = count ? sum / static_cast<double>(count) : 0.0;
    if (count > 0 && std::abs(mean - 0.3) <= 0.15) ++mean_ok;
    means += (means.empty() ? "" : " ") + fmt(mean);

    TuringParams weak = p;
    weak.D1 = 1.5;
    weak.D2 = 23.6;
    const auto weak_trace = simulate_turing(weak);
    const auto rho = monitor_quant(pattern, weak_trace, space).robustness_at_zero[probe];
    if (rho.sign() < 0 && rho.is_finite() && rho.to_double() >= -0.2) ++weak_negative;
    bad += (bad.empty() ? "" : " ") + to_string(rho);
    slowest = std::max(slowest, seconds_since(start));
  }
  const bool pass = pattern_true >= 4 && mean_ok == 5 && weak_negative >= 4 && slowest <= 600.0;
  return {pass, "pattern true " + std::to_string(pattern_true) + "/5 (>= 4); mean positive spotFormation rho [" +
                    means + "] in 0.3+-0.15: " + std::to_string(mean_ok) + "/5; D=(1.5,23.6) pattern rho [" + bad +
                    "] negative with |rho| <= 0.2: " + std::to_string(weak_negative) + "/5 (>= 4); slowest seed " +
                    fmt(slowest) + " s"};
}

// ---------------------------------------------------------------- complexity

Outcome complexity() {
  // x = -1 only at the first corner, y = -2 everywhere
  const auto f = parse_formula("(x > 0) S[0,inf] (y > 0)");
  MonitorOptions options;
  options.jobs = 1;
  options.surround = SurroundStrategy::Full;
  const std::size_t m = 4;
  std::vector<double> measured, predicted;
  std::string detail;
  for (std::size_t K : {8, 16, 32}) {
    const auto space = regular_grid(K, 1.0);
    Trace t({"x", "y"}, space.size(), m, Time(1));
    for (std::size_t l = 0; l < space.size(); ++l)
      for (std::size_t k = 0; k < m; ++k) {
        t.at(l, k, 0) = l == 0 ? -1.0 : 1.0;
        t.at(l, k, 1) = -2.0;
      }
    const int reps = K == 32 ? 1 : (K == 16 ? 3 : 20);
    double best = oracle::inf;
    for (int r = 0; r < reps; ++r) {
      const auto start = Clock::now();
      const auto q = monitor_quant(f, t, space, options);
      best = std::min(best, seconds_since(start));
      if (q.robustness_at_zero[space.size() - 1] != ExtReal(-1)) return {false, "wrong robustness"};
    }
    const double L = static_cast<double>(space.size());
    measured.push_back(best);
    predicted.push_back(space.diameter() * L * L * static_cast<double>(m));
    detail += "K=" + std::to_string(K) + ": " + fmt(best * 1e3) + " ms; ";
  }
  bool pass = true;
  for (std::size_t i = 1; i < measured.size(); ++i) {
    const double ratio = (measured[i] / measured[i - 1]) / (predicted[i] / predicted[i - 1]);
    detail += "ratio/predicted " + fmt(ratio) + (i + 1 < measured.size() ? "; " : "");
    pass = pass && ratio >= 0.5 && ratio <= 2.0;
  }
  return {pass, detail + " (within [0.5, 2])"};
}

// ---------------------------------------------------------------- smc

Outcome smc_sweep() {
  const auto script = read_script(SSTL_DATA_DIR "/turing.sstl");
  TuringParams base;
  base.K = 16;
  const auto space = turing_space(base);
  EstimateConfig config;
  config.formula = script.get("phi_pattern");
  config.location = space.index_of(grid_id(8, 8));
  config.runs = 300;
  config.seed = 2024;
  const auto family = [&](double eps) {
    return TraceGenerator([base, eps](std::uint64_t seed) {
      auto p = base;
      p.epsilon = eps;
      p.seed = seed;
      return simulate_turing(p);
    });
  };
  const auto start = Clock::now();
  const auto result = sweep(family, parse_grid("0:0.9:0.1"), space, config);
  const double elapsed = seconds_since(start);
  std::ostringstream csv;
  write_sweep_csv(result, csv);
  std::cout << csv.str();
  const auto& pts = result.points;
  bool monotone = true;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (pts[j].estimate.p_hat > pts[i].estimate.p_hat && pts[j].estimate.ci_low > pts[i].estimate.ci_high)
        monotone = false;
  const bool p0 = pts.front().estimate.p_hat == 1.0;
  const double r = result.pearson_r.value_or(std::nan(""));
  const bool pass = monotone && p0 && r > 0.5 && elapsed <= 3600.0;
  return {pass, std::string("K=16, 300 runs x 10 eps; non-increasing up to CI overlap: ") + (monotone ? "yes" : "no") +
                    "; p_hat(0) = " + fmt(pts.front().estimate.p_hat) + "; pearson r = " + fmt(r) + " (> 0.5); " +
                    fmt(elapsed) + " s"};
}

// ---------------------------------------------------------------- determinism

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + SSTL_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

Outcome determinism() {
  const auto dir = fs::temp_directory_path() / "sstl_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string d = "\"" + dir.string() + "/";
  const std::string model = " --K 10 --T 25 --epsilon 0.2 ";
  const std::string script = " -f \"" SSTL_DATA_DIR "/turing.sstl\" ";
  std::vector<std::string> differing;
  std::size_t compared = 0;
  bool ran = true;
  for (const char* jobs : {"1", "3", "0"}) {
    const std::string j = jobs;
    const std::string tag = "_" + j;
    ran = ran && run_cli("simulate turing" + model + "--seed 7 -o " + d + "trace" + tag +
                         ".csv\" --graph-out " + d + "grid" + tag + ".tsv\"") == 0;
    ran = ran && run_cli("monitor -g " + d + "grid_1.tsv\" -t " + d + "trace_1.csv\"" + script +
                         "-n phi_spot --mode both --jobs " + j + " -o " + d + "monitor" + tag + ".csv\" --dump " +
                         d + "dump" + tag + ".csv\"") == 0;
    ran = ran && run_cli("smc estimate" + model + script + "-n phi_spot --runs 12 --seed 3 --jobs " + j + " -o " +
                         d + "estimate" + tag + ".json\" --runs-out " + d + "runs" + tag + ".csv\"") == 0;
    ran = ran && run_cli("smc sweep" + model + script + "-n phi_spot --runs 6 --seed 3 --eps 0,0.4 --jobs " + j +
                         " --out " + d + "sweep" + tag + ".csv\" --json " + d + "sweep" + tag + ".json\"") == 0;
  }
  if (!ran) return {false, "a CLI invocation failed"};
  for (const char* name : {"trace", "grid", "monitor", "dump", "estimate", "runs", "sweep"}) {
    for (const char* ext : {".csv", ".tsv", ".json"}) {
      const auto one = dir / (std::string(name) + "_1" + ext);
      if (!fs::exists(one)) continue;
      for (const char* other : {"_3", "_0"}) {
        ++compared;
        if (slurp(one) != slurp(dir / (std::string(name) + other + ext))) differing.push_back(name);
      }
    }
  }
  // library level: monitors on a noisy trace
  TuringParams p;
  p.K = 12;
  p.T = Time(20);
  p.epsilon = 0.4;
  p.seed = 11;
  const auto trace = simulate_turing(p);
  const auto space = turing_space(p);
  const auto f = parse_formula("F[0,2] ((xA <= 2) S[1,4] (xA > 2)) | everywhere[0,3] G[0,1] (xB > 1)");
  std::ostringstream outs[2];
  for (int i = 0; i < 2; ++i) {
    MonitorOptions o;
    o.jobs = i == 0 ? 1 : 4;
    write_robustness_dump(monitor_quant(f, trace, space, o), space, outs[i]);
    write_satisfaction_csv(monitor_bool(f, trace, space, o), space, outs[i]);
  }
  ++compared;
  if (outs[0].str() != outs[1].str()) differing.push_back("library monitor");
  fs::remove_all(dir);
  std::string which;
  for (const auto& n : differing) which += " " + n;
  return {differing.empty(), std::to_string(compared) + " output pairs across --jobs 1/3/0 compared, " +
                                 std::to_string(differing.size()) + " differ" + which};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"surround_bool", surround_bool}, {"surround_quant", surround_quant},
      {"soundness", soundness},         {"until", until_oracle},
      {"discretisation", discretisation}, {"turing", turing},
      {"complexity", complexity},       {"smc_sweep", smc_sweep},
      {"determinism", determinism},
  };
  std::vector<std::string> wanted(argv + 1, argv + argc);
  int failures = 0;
  for (const auto& c : criteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.name) == wanted.end()) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << ": " << o.detail << std::endl;
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
