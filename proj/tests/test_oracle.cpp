#include <doctest.h>

#include <random>

#include "pcc/error.hpp"
#include "pcc/matching.hpp"
#include "pcc/oracle.hpp"

using namespace pcc;

TEST_CASE("brute_force_map") {
  const OracleResult empty = brute_force_map(BinaryMRF(3, {}, {0, 0, 0}));
  CHECK(empty.energy == 0.0);
  CHECK(empty.assignment == LabelAssignment{0, 0, 0});

  const OracleResult unary = brute_force_map(BinaryMRF(2, {}, {-2, 3}));
  CHECK(unary.energy == -2.0);
  CHECK(unary.assignment == LabelAssignment{1, 0});

  const OracleResult path =
      brute_force_map(BinaryMRF(3, {{0, 1, 2.0}, {1, 2, -1.0}}, {0, 1, 0}));
  CHECK(path.energy == -1.0);
  CHECK(path.assignment == LabelAssignment{0, 0, 1});

  CHECK_THROWS_AS(brute_force_map(BinaryMRF(25, {}, std::vector<double>(25, 0))),
                  TooLarge);
}

TEST_CASE("ground state oracle agrees with the MAP oracle") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> w(-10, 10);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 8);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng() % 2) edges.push_back({i, j, static_cast<double>(w(rng))});
      }
    }
    std::vector<double> unary(n);
    for (double& u : unary) u = w(rng);
    const BinaryMRF m(n, edges, unary, 3.0);
    const OracleResult sym = brute_force_ground_state(symmetrize(m));
    CHECK(sym.assignment[0] == 0);
    CHECK(sym.energy + m.constant() == brute_force_map(m).energy);
  }
}

TEST_CASE("brute_force_mwpm") {
  const Matching one = brute_force_mwpm(WeightedMatchGraph(2, {{0, 1, 7}}));
  CHECK(one.pairs == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(one.total_weight == 7);

  const WeightedMatchGraph c4(4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 3}, {3, 0, 4}});
  CHECK(brute_force_mwpm(c4).total_weight == 4);

  CHECK_THROWS_AS(brute_force_mwpm(WeightedMatchGraph(4, {{0, 1, 1}, {0, 2, 1}})),
                  NoPerfectMatching);
  CHECK_THROWS_AS(brute_force_mwpm(WeightedMatchGraph(14, {})), TooLarge);
}
