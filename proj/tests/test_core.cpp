#include "doctest.h"

#include <cmath>

#include "netform/utility.hpp"
#include "support/bridge.hpp"

using namespace netform;
using testing_support::random_instance;
using testing_support::to_model;

namespace {

Population one_type(int n) { return Population::from_labels(std::vector<int>(n, 0), std::vector<int>(n, 0)); }

NetworkState path3() {
  const Edge e[] = {{0, 1}, {1, 2}};
  return NetworkState::from_edges(3, e);
}

}  // namespace

TEST_CASE("population census and layout") {
  const auto pop = Population::from_composition({{18, 6}, {6, 18}});
  CHECK(pop.size() == 48);
  CHECK(pop.group_count() == 2);
  CHECK(pop.type_count() == 2);
  CHECK(pop.census(0, 0) == 18);
  CHECK(pop.census(1, 1) == 18);
  CHECK(pop.group_sizes[1] == 24);
  CHECK(pop.groups[0] == 0);
  CHECK(pop.types[17] == 0);
  CHECK(pop.types[18] == 1);
  CHECK(pop.groups[24] == 1);

  CHECK_THROWS(Population::from_labels({}, {}));
  CHECK_THROWS(Population::from_labels({0, 1}, {0}));
  CHECK_THROWS(Population::from_labels({0, -1}, {0, 0}));
}

TEST_CASE("network state invariants") {
  NetworkState net(4);
  CHECK(net.memory_ones() == 4);
  CHECK(net.add_link(0, 1) == 2);
  CHECK(net.linked(1, 0));
  CHECK(net.acquainted(1, 0));
  CHECK(net.memory_ones() == 6);
  net.remove_link(0, 1);
  CHECK_FALSE(net.linked(0, 1));
  CHECK(net.acquainted(0, 1));
  CHECK(net.add_link(0, 1) == 0);
  CHECK(net.meet(2, 3) == 2);
  CHECK(net.meet(2, 3) == 0);
  CHECK(net.degree(0) == 1);
  CHECK(net.link_count() == 1);
  CHECK(net.edges() == std::vector<Edge>{{0, 1}});
  net.validate();

  CHECK_THROWS(net.add_link(2, 2));
  CHECK_THROWS(net.add_link(0, 4));

  BitMatrix bad = BitMatrix::Identity(3, 3);
  bad(0, 1) = 1;
  CHECK_THROWS(NetworkState::with_memory(bad));
  bad(1, 0) = 1;
  bad(2, 2) = 0;
  CHECK_THROWS(NetworkState::with_memory(bad));
}

TEST_CASE("packed rows match adjacency") {
  Rng rng(5);
  NetworkState net(130);
  for (int k = 0; k < 600; ++k) {
    const int i = static_cast<int>(rng.below(130));
    const int j = static_cast<int>(rng.below(130));
    if (i == j) continue;
    if (net.linked(i, j)) {
      net.remove_link(i, j);
    } else {
      net.add_link(i, j);
    }
  }
  for (int i = 0; i < net.size(); ++i) {
    const auto row = net.row_bits(i);
    for (int j = 0; j < net.size(); ++j) {
      const bool bit = (row[static_cast<std::size_t>(j) / 64] >> (j % 64)) & 1U;
      REQUIRE(bit == net.linked(i, j));
    }
  }
}

TEST_CASE("cost structure validation") {
  CHECK_NOTHROW(CostStructure{}.validate());
  CHECK_THROWS(CostStructure{1.0, 0.2, 1.0}.validate());
  CHECK_THROWS(CostStructure{0.7, 0.0, 1.0}.validate());
  CHECK_THROWS(CostStructure{0.7, 0.5, 0.5}.validate());
  CHECK_THROWS(CostStructure{0.7, 0.2, std::nan("")}.validate());
}

TEST_CASE("geodesic distances") {
  const auto empty = geodesic_distances(NetworkState(3), 0);
  CHECK(empty[0] == 0);
  CHECK(empty[1] == kUnreachable);
  CHECK(empty[2] == kUnreachable);

  const auto d = geodesic_distances(path3(), 0);
  CHECK(d[0] == 0);
  CHECK(d[1] == 1);
  CHECK(d[2] == 2);

  NetworkState k4(4);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) k4.add_link(i, j);
  }
  const auto c = geodesic_distances(k4, 0);
  CHECK(c[1] == 1);
  CHECK(c[3] == 1);
}

TEST_CASE("actual utility examples") {
  const CostStructure costs;
  const Edge e[] = {{0, 1}};
  CHECK(actual_utility(NetworkState::from_edges(2, e), one_type(2), costs, 0) == doctest::Approx(0.5));
  const auto net = path3();
  CHECK(actual_utility(net, one_type(3), costs, 1) == doctest::Approx(1.0));
  CHECK(actual_utility(net, one_type(3), costs, 0) == doctest::Approx(0.99));
  CHECK(actual_utility(NetworkState::from_edges(4, e), one_type(4), costs, 3) == 0.0);
}

TEST_CASE("expected cost examples") {
  const CostStructure costs;
  const auto pop = Population::from_labels({0, 1}, {0, 0});
  auto beliefs = BeliefTable::uniform(2, 2, 0.5);
  NetworkState net(2);
  CHECK(expected_cost(0, 1, beliefs, net, pop, costs) == doctest::Approx(0.6));
  beliefs.base(0, 1) = 1.0;
  CHECK(expected_cost(0, 1, beliefs, net, pop, costs) == 0.2);
  beliefs.base(0, 1) = 0.0;
  net.meet(0, 1);
  CHECK(expected_cost(0, 1, beliefs, net, pop, costs) == 0.2);
}

TEST_CASE("expected incremental utility examples") {
  const CostStructure costs;
  const auto half = BeliefTable::uniform(3, 1, 0.5);
  CHECK(expected_incremental_utility(NetworkState(2), one_type(2), costs, BeliefTable::uniform(2, 1, 0.5), 0, 1) ==
        doctest::Approx(0.1));
  CHECK(expected_incremental_utility(path3(), one_type(3), costs, half, 0, 2) == doctest::Approx(-0.39));

  // agent 0 alone, agent 1 the hub of a three-agent star
  const Edge star[] = {{1, 2}, {1, 3}};
  const auto net = NetworkState::from_edges(4, star);
  CHECK(expected_incremental_utility(net, one_type(4), costs, BeliefTable::uniform(4, 1, 1.0), 0, 1) ==
        doctest::Approx(1.48));

  CHECK_THROWS(expected_incremental_utility(path3(), one_type(3), costs, half, 0, 1));
  CHECK_THROWS(deletion_gain(path3(), one_type(3), costs, 0, 2));
}

TEST_CASE("stability examples") {
  const CostStructure costs;
  const auto pop2 = Population::from_labels({0, 1}, {0, 1});

  const auto strangers = is_pairwise_stable(NetworkState(2), pop2, costs, BeliefTable::uniform(2, 2, 0.5));
  CHECK_FALSE(strangers.stable);
  REQUIRE(strangers.witness);
  CHECK(strangers.witness->violation == Violation::AdditionAcceptable);

  const Edge e[] = {{0, 1}};
  const auto linked = NetworkState::from_edges(2, e);
  CHECK(is_pairwise_stable(linked, one_type(2), costs, BeliefTable::uniform(2, 1, 0.5)).stable);

  const auto cross = is_pairwise_stable(linked, pop2, costs, BeliefTable::uniform(2, 2, 0.5));
  CHECK_FALSE(cross.stable);
  REQUIRE(cross.witness);
  CHECK(cross.witness->violation == Violation::DeletionProfitable);
}

TEST_CASE("addition ties at zero are accepted, deletion ties are not") {
  // delta - c = 0 exactly for a lone pair of the same type
  const CostStructure costs{0.5, 0.5, 1.0};
  const auto pop = one_type(2);
  const auto beliefs = BeliefTable::uniform(2, 1, 1.0);
  CHECK(expected_incremental_utility(NetworkState(2), pop, costs, beliefs, 0, 1) == 0.0);
  CHECK_FALSE(is_pairwise_stable(NetworkState(2), pop, costs, beliefs).stable);
  const Edge e[] = {{0, 1}};
  const auto linked = NetworkState::from_edges(2, e);
  CHECK(deletion_gain(linked, pop, costs, 0, 1) == 0.0);
  CHECK(is_pairwise_stable(linked, pop, costs, beliefs).stable);
}

TEST_CASE("library matches the brute-force oracle on random small states") {
  Rng rng(20240611);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto x = random_instance(rng, 6);
    const auto m = to_model(x.net, x.pop, x.costs, x.beliefs);
    const int n = x.pop.size();
    for (int i = 0; i < n; ++i) {
      REQUIRE(actual_utility(x.net, x.pop, x.costs, i) == doctest::Approx(oracle::utility(m, i)).epsilon(1e-12));
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        if (x.net.linked(i, j)) {
          REQUIRE(deletion_gain(x.net, x.pop, x.costs, i, j) ==
                  doctest::Approx(oracle::delete_gain(m, i, j)).epsilon(1e-12));
        } else {
          REQUIRE(expected_incremental_utility(x.net, x.pop, x.costs, x.beliefs, i, j) ==
                  doctest::Approx(oracle::expected_add_gain(m, i, j)).epsilon(1e-12));
        }
      }
    }
    REQUIRE(is_pairwise_stable(x.net, x.pop, x.costs, x.beliefs).stable == oracle::pairwise_stable(m));
  }
}

TEST_CASE("acquainted pairs: expected gain equals actual gain") {
  Rng rng(77);
  for (int trial = 0; trial < 500; ++trial) {
    auto x = random_instance(rng, 6);
    const int n = x.pop.size();
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (!x.net.linked(i, j)) x.net.meet(i, j);
      }
    }
    const auto m = to_model(x.net, x.pop, x.costs, x.beliefs);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j || x.net.linked(i, j)) continue;
        REQUIRE(expected_incremental_utility(x.net, x.pop, x.costs, x.beliefs, i, j) ==
                doctest::Approx(oracle::actual_add_gain(m, i, j)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("expected gain is non-decreasing in the belief") {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    auto x = random_instance(rng, 6);
    const int n = x.pop.size();
    const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const int j = (i + 1) % n;
    if (x.net.linked(i, j) || x.net.acquainted(i, j)) continue;
    double prev = -1e300;
    for (double p = 0.0; p <= 1.0; p += 0.125) {
      x.beliefs.base(i, x.pop.groups[j]) = p;
      const double e = expected_incremental_utility(x.net, x.pop, x.costs, x.beliefs, i, j);
      REQUIRE(e >= prev);
      prev = e;
    }
  }
}

TEST_CASE("deleting then re-adding a link leaves utilities unchanged") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    auto x = random_instance(rng, 6);
    const auto edges = x.net.edges();
    if (edges.empty()) continue;
    const auto [i, j] = edges[rng.below(edges.size())];
    std::vector<double> before;
    for (int a = 0; a < x.pop.size(); ++a) before.push_back(actual_utility(x.net, x.pop, x.costs, a));
    x.net.remove_link(i, j);
    x.net.add_link(i, j);
    for (int a = 0; a < x.pop.size(); ++a) REQUIRE(actual_utility(x.net, x.pop, x.costs, a) == before[a]);
  }
}

TEST_CASE("evaluator agrees with free functions on larger graphs") {
  Rng rng(99);
  const auto pop = Population::from_composition({{20, 20}, {20, 20}});
  const CostStructure costs;
  auto beliefs = rational_base_beliefs(pop);
  NetworkState net(pop.size());
  for (int k = 0; k < 250; ++k) {
    const int i = static_cast<int>(rng.below(80));
    const int j = static_cast<int>(rng.below(80));
    if (i != j && !net.linked(i, j)) net.add_link(i, j);
  }
  const LinkEvaluator eval(net, pop, costs, beliefs);
  for (int k = 0; k < 400; ++k) {
    const int i = static_cast<int>(rng.below(80));
    const int j = static_cast<int>(rng.below(80));
    if (i == j) continue;
    if (net.linked(i, j)) {
      NetworkState cut = net;
      cut.remove_link(i, j);
      REQUIRE(eval.deletion_gain(i, j) ==
              doctest::Approx(actual_utility(cut, pop, costs, i) - actual_utility(net, pop, costs, i)).epsilon(1e-12));
    } else {
      NetworkState added = net;
      added.add_link(i, j);
      const double benefit_change = actual_utility(added, pop, costs, i) - actual_utility(net, pop, costs, i) +
                                    costs.cost(pop.same_type(i, j));
      REQUIRE(eval.addition_benefit(i, j) == doctest::Approx(benefit_change).epsilon(1e-12));
    }
  }
}
