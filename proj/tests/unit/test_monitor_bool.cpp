#include "oracles.hpp"
#include "sstl/errors.hpp"
#include "sstl/monitor_bool.hpp"
#include "sstl/parser.hpp"

#include <doctest.h>

#include <random>

using namespace sstl;

namespace {

SpaceModel path_abc() { return SpaceModel({"a", "b", "c"}, {{"a", "b", 1.0}, {"b", "c", 1.0}}); }

/// One sample per location, variable p.
Trace labels(const SpaceModel& s, const std::vector<std::vector<double>>& values,
             std::vector<std::string> vars = {"p", "q"}) {
  Trace t(vars, s.size(), 1, Time(1));
  for (std::size_t l = 0; l < s.size(); ++l)
    for (std::size_t v = 0; v < vars.size(); ++v) t.at(l, 0, v) = values[v][l];
  return t;
}

std::vector<BooleanSignal> constants(const std::vector<bool>& v) {
  std::vector<BooleanSignal> out;
  for (bool b : v) out.push_back(BooleanSignal::constant(Time(1), b));
  return out;
}

} // namespace

TEST_CASE("true holds everywhere on the whole horizon") {
  const auto s = path_abc();
  Trace t({"x"}, s.size(), 4, Time(1, 2));
  const auto r = monitor_bool(parse_formula("true"), t, s);
  for (const auto& sig : r.signals) CHECK(sig == BooleanSignal::constant(Time(2), true));
}

TEST_CASE("somewhere and everywhere") {
  const auto s = path_abc();
  const auto child = constants({false, false, true});
  CHECK(bool_somewhere(child, s, 0, 0, 2).value_at(Time(0)));
  CHECK_FALSE(bool_somewhere(child, s, 0, 0, 1).value_at(Time(0)));
  CHECK(bool_somewhere(child, s, 2, 0, 0).value_at(Time(0)));
  CHECK_FALSE(bool_somewhere(child, s, 0, 0, 0).value_at(Time(0)));
  CHECK_FALSE(bool_everywhere(child, s, 0, 0, 2).value_at(Time(0)));
  CHECK(bool_everywhere(child, s, 0, 2, 2).value_at(Time(0)));
  // empty range
  SpaceModel lonely({"a", "b"}, {});
  const auto c2 = constants({true, true});
  CHECK_FALSE(bool_somewhere(c2, lonely, 0, 1, 5).value_at(Time(0)));
  CHECK(bool_everywhere(c2, lonely, 0, 1, 5).value_at(Time(0)));
}

TEST_CASE("everywhere is the dual of somewhere") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = oracle::random_graph(rng, 6, 0.4);
    std::vector<BooleanSignal> child;
    for (std::size_t l = 0; l < s.size(); ++l)
      child.push_back(oracle::random_signal(rng, Time(4), Time(1)));
    std::vector<BooleanSignal> negated;
    for (const auto& c : child) negated.push_back(bool_not(c));
    for (LocationIndex l = 0; l < s.size(); ++l) {
      CHECK(bool_everywhere(child, s, l, 1, 4) == bool_not(bool_somewhere(negated, s, l, 1, 4)));
    }
  }
}

TEST_CASE("surround on a path") {
  const auto s = path_abc();
  const auto p1 = constants({true, false, false});
  const auto p2 = constants({false, true, false});
  CHECK(bool_surround(p1, p2, s, 0, 0, 2).value_at(Time(0)));
  CHECK_FALSE(bool_surround(p1, p2, s, 1, 0, 2).value_at(Time(0)));
  // phi1 false at l
  CHECK_FALSE(bool_surround(p2, p1, s, 0, 0, 2).value_at(Time(0)));
}

TEST_CASE("surround matches subset enumeration on random graphs") {
  std::mt19937_64 rng(8);
  std::bernoulli_distribution coin(0.6);
  std::uniform_int_distribution<int> bound(0, 6);
  for (int trial = 0; trial < 150; ++trial) {
    const auto s = oracle::random_graph(rng, 2 + trial % 7, 0.45);
    const oracle::Graph g(s);
    const auto d = oracle::floyd_warshall(g);
    std::vector<bool> v1(s.size()), v2(s.size());
    for (std::size_t l = 0; l < s.size(); ++l) {
      v1[l] = coin(rng);
      v2[l] = coin(rng);
    }
    double d1 = bound(rng), d2 = bound(rng);
    if (d2 < d1) std::swap(d1, d2);
    const auto p1 = constants(v1);
    const auto p2 = constants(v2);
    for (LocationIndex l = 0; l < s.size(); ++l) {
      const bool want = oracle::brute_bool_surround(g, d, v1, v2, l, d1, d2);
      CHECK(bool_surround(p1, p2, s, l, d1, d2).value_at(Time(0)) == want);
      CHECK(brute_force_bool_surround(v1, v2, s, l, d1, d2) == want);
    }
  }
}

TEST_CASE("figure graph properties") {
  const auto space = read_graph(std::filesystem::path(SSTL_DATA_DIR "/figure_graph.tsv"));
  const auto trace = read_trace(std::filesystem::path(SSTL_DATA_DIR "/figure_trace.csv"), space);
  const auto script = read_script(SSTL_DATA_DIR "/figure.sstl");
  MonitorOptions opt;
  opt.oracle = true;
  const auto region = monitor_bool(script.get("green_region"), trace, space, opt);
  const auto core = monitor_bool(script.get("green_core"), trace, space, opt);
  const auto g = trace.variable_index("green");
  for (LocationIndex l = 0; l < space.size(); ++l) {
    const bool green = trace.at(l, 0, g) >= 1;
    CHECK(region.satisfied_at_zero[l] == green);
    CHECK(core.satisfied_at_zero[l] == (space.id(l) == "7_3"));
  }
  const auto orange = space.index_of("1_1");
  CHECK(monitor_bool(script.get("pink_near"), trace, space).satisfied_at_zero[orange]);
  CHECK(monitor_bool(script.get("yellow_ring"), trace, space).satisfied_at_zero[orange]);
}

TEST_CASE("surround over time splits on the joint covering") {
  const auto s = path_abc();
  Trace t({"p", "q"}, 3, 4, Time(1));
  // a: p always ; b: q on [1,3) ; c: nothing
  for (std::size_t k = 0; k < 4; ++k) {
    t.at(0, k, 0) = 1;
    t.at(1, k, 1) = (k == 1 || k == 2) ? 1 : 0;
  }
  const auto r = monitor_bool(parse_formula("(p > 0) S[0,2] (q > 0)"), t, s);
  CHECK(r.signals[0] == BooleanSignal(Time(4), {{Time(1), Time(3)}}));
}

TEST_CASE("input checks") {
  const auto s = path_abc();
  const auto t = labels(s, {{1, 0, 0}, {0, 1, 0}});
  CHECK_THROWS_AS(monitor_bool(parse_formula("z > 0"), t, s), SchemaError);
  CHECK_THROWS_AS(monitor_bool(parse_formula("F[0,1] p > 0"), t, s), HorizonError);
  const SpaceModel other({"a"}, {});
  CHECK_THROWS_AS(monitor_bool(parse_formula("p > 0"), t, other), SchemaError);
  CHECK_THROWS_AS(monitor_bool(parse_formula("p / q > 0"), t, s), EvaluationError);
}

TEST_CASE("equality atoms are boolean-only") {
  const auto s = path_abc();
  const auto t = labels(s, {{1, 0, 0}, {0, 1, 0}});
  const auto r = monitor_bool(parse_formula("p == 1"), t, s);
  CHECK(r.satisfied_at_zero == std::vector<bool>{true, false, false});
}

TEST_CASE("results do not depend on the number of jobs") {
  std::mt19937_64 rng(4);
  const auto s = regular_grid(6, 1.0);
  Trace t({"x"}, s.size(), 12, Time(1, 2));
  std::normal_distribution<double> n(0, 1);
  for (std::size_t l = 0; l < s.size(); ++l)
    for (std::size_t k = 0; k < 12; ++k) t.at(l, k, 0) = n(rng);
  const auto f = parse_formula("F[0,2] ((x <= 0.5) S[1,3] (x > 0.5)) | everywhere[0,2] (x > -1)");
  MonitorOptions one, four;
  one.jobs = 1;
  four.jobs = 4;
  CHECK(monitor_bool(f, t, s, one).signals == monitor_bool(f, t, s, four).signals);
}
