#include "oracles.hpp"
#include "sstl/errors.hpp"
#include "sstl/space.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace sstl;

namespace {

SpaceModel path_abc(double w1 = 1.0, double w2 = 1.0) {
  return SpaceModel({"a", "b", "c"}, {{"a", "b", w1}, {"b", "c", w2}});
}

LocationSet ids_to_set(const SpaceModel& s, std::initializer_list<const char*> ids) {
  LocationSet out;
  for (const auto* id : ids) out.push_back(s.index_of(id));
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

TEST_CASE("single location space") {
  SpaceModel s({"only"}, {});
  CHECK(s.size() == 1);
  CHECK(s.distance(0, 0) == 0.0);
  CHECK(s.diameter() == 0.0);
  CHECK(s.hop_diameter() == 0);
}

TEST_CASE("path distances match simple path enumeration") {
  const auto s = path_abc(2.0, 3.0);
  const oracle::Graph g(s);
  CHECK(s.distance(s.index_of("a"), s.index_of("c")) == 5.0);
  CHECK(oracle::simple_path_distance(g, 0, 2) == 5.0);
  CHECK(s.diameter() == 5.0);
  CHECK(s.hop_diameter() == 2);
}

TEST_CASE("build_space rejects malformed graphs") {
  CHECK_THROWS_AS(SpaceModel({}, {}), SpaceError);
  CHECK_THROWS_AS(SpaceModel({"a", "a"}, {}), SpaceError);
  CHECK_THROWS_AS(SpaceModel({"a", "b"}, {{"a", "b", 0.0}}), SpaceError);
  CHECK_THROWS_AS(SpaceModel({"a", "b"}, {{"a", "b", -1.0}}), SpaceError);
  CHECK_THROWS_AS(SpaceModel({"a", "b"}, {{"a", "z", 1.0}}), SpaceError);
  CHECK_THROWS_AS(SpaceModel({"a", "b"}, {{"a", "a", 1.0}}), SpaceError);
  CHECK_THROWS_AS(SpaceModel({"a", "b"}, {{"a", "b", 1.0}, {"b", "a", 2.0}}), SpaceError);
}

TEST_CASE("disconnected pairs are at infinite distance and never in range") {
  SpaceModel s({"a", "b", "c"}, {{"a", "b", 1.0}});
  CHECK(s.distance(0, 2) == oracle::inf);
  CHECK(s.diameter() == 1.0);
  CHECK(s.locations_in_range(0, 0.0, oracle::inf) == ids_to_set(s, {"a", "b"}));
}

TEST_CASE("locations_in_range") {
  const auto s = path_abc();
  for (LocationIndex l = 0; l < s.size(); ++l) CHECK(s.locations_in_range(l, 0, 0) == LocationSet{l});
  CHECK(s.locations_in_range(s.index_of("a"), 1, 2) == ids_to_set(s, {"b", "c"}));
  CHECK(s.locations_in_range(s.index_of("b"), 1, 1) == ids_to_set(s, {"a", "c"}));
  CHECK_THROWS_AS(s.locations_in_range(0, 2, 1), SpaceError);
  CHECK_THROWS_AS(s.locations_in_range(0, -1, 1), SpaceError);
  CHECK_THROWS_AS(s.index_of("zz"), SpaceError);
}

TEST_CASE("external_boundary") {
  const auto s = path_abc();
  CHECK(s.external_boundary(std::vector<LocationIndex>{0, 1, 2}).empty());
  CHECK(s.external_boundary(std::vector<LocationIndex>{}).empty());
  CHECK(s.external_boundary(ids_to_set(s, {"b"})) == ids_to_set(s, {"a", "c"}));
  CHECK(s.external_boundary(ids_to_set(s, {"a"})) == ids_to_set(s, {"b"}));
}

TEST_CASE("regular_grid") {
  const auto one = regular_grid(1, 1.0);
  CHECK(one.size() == 1);
  CHECK(one.edge_count() == 0);

  const auto two = regular_grid(2, 1.0);
  CHECK(two.size() == 4);
  CHECK(two.edge_count() == 4);
  CHECK(two.diameter() == 2.0);

  const auto big = regular_grid(32, 1.0);
  CHECK(big.size() == 1024);
  std::size_t max_deg = 0;
  for (LocationIndex l = 0; l < big.size(); ++l) {
    max_deg = std::max(max_deg, big.neighbours(l).size());
    for (const auto& nb : big.neighbours(l)) CHECK(big.distance(l, nb.location) == 1.0);
  }
  CHECK(max_deg == 4);
  CHECK(big.index_of("6_6") == 5 * 32 + 5);
  CHECK(big.locations_in_range(big.index_of("1_1"), 0, 45).size() == 1024 - 153);
  CHECK(big.diameter() == 62.0);

  CHECK_THROWS_AS(regular_grid(0, 1.0), SpaceError);
  CHECK_THROWS_AS(regular_grid(2, 0.0), SpaceError);
}

TEST_CASE("distance matrix invariants on random graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto s = oracle::random_graph(rng, 2 + trial % 7, 0.4, 4);
    const oracle::Graph g(s);
    const auto fw = oracle::floyd_warshall(g);
    double diameter = 0.0;
    for (LocationIndex a = 0; a < s.size(); ++a) {
      CHECK(s.distance(a, a) == 0.0);
      for (LocationIndex b = 0; b < s.size(); ++b) {
        CHECK(s.distance(a, b) == fw[a][b]);
        CHECK(s.distance(a, b) == oracle::simple_path_distance(g, a, b));
        CHECK(s.distance(a, b) == s.distance(b, a));
        if (fw[a][b] < oracle::inf) diameter = std::max(diameter, fw[a][b]);
        for (LocationIndex c = 0; c < s.size(); ++c) {
          if (s.distance(a, b) < oracle::inf && s.distance(b, c) < oracle::inf) {
            CHECK(s.distance(a, c) <= s.distance(a, b) + s.distance(b, c));
          }
        }
      }
    }
    CHECK(s.diameter() == diameter);
  }
}

TEST_CASE("graph TSV round trip") {
  const auto s = path_abc(1.5, 2.0);
  std::stringstream ss;
  write_graph(s, ss);
  const auto back = read_graph(ss);
  CHECK(back.ids() == s.ids());
  CHECK(back.distance(0, 2) == 3.5);

  std::istringstream bad("#locations\na\nb\n#edges\na\tb\tx\n");
  try {
    read_graph(bad);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.line() == 5);
  }
}
