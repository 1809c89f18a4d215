#include "doctest.h"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "netform/beliefs.hpp"
#include "netform/rng.hpp"
#include "support/oracle.hpp"

using namespace netform;

TEST_CASE("derived seeds are stable and order sensitive") {
  CHECK(derive_seed({1, 2, 3}) == derive_seed({1, 2, 3}));
  CHECK(derive_seed({1, 2, 3}) != derive_seed({3, 2, 1}));
  CHECK(derive_seed({1, 2}) != derive_seed({1, 2, 0}));
  std::uint64_t s = 0;
  // reference value of splitmix64 from state 0
  CHECK(splitmix64(s) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("rng primitives") {
  Rng rng(42);
  std::vector<int> counts(7, 0);
  for (int k = 0; k < 70000; ++k) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    ++counts[rng.below(7)];
  }
  for (int c : counts) CHECK(std::abs(c - 10000) < 400);

  std::vector<int> items{0, 1, 2, 3, 4, 5, 6, 7};
  rng.shuffle(std::span<int>(items));
  CHECK(std::set<int>(items.begin(), items.end()).size() == 8);

  Rng a(9), b(9);
  for (int k = 0; k < 100; ++k) REQUIRE(a.beta(2.0, 5.0) == b.beta(2.0, 5.0));
}

TEST_CASE("beta draws follow the Beta law") {
  for (double beta : {3.0, 7.0, 15.0}) {
    Rng rng(derive_seed({1234, static_cast<std::uint64_t>(beta)}));
    std::vector<double> xs;
    for (int k = 0; k < 20000; ++k) xs.push_back(rng.beta(1.0, beta));
    std::sort(xs.begin(), xs.end());
    CHECK(oracle::ks_distance(xs, [&](double x) { return oracle::beta1_cdf(x, beta); }) < 0.02);
  }
  // general shapes: mean and variance
  Rng rng(5);
  const double a = 2.5, b = 4.0;
  double sum = 0.0, sq = 0.0;
  const int n = 40000;
  for (int k = 0; k < n; ++k) {
    const double x = rng.beta(a, b);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  CHECK(mean == doctest::Approx(a / (a + b)).epsilon(0.01));
  CHECK(sq / n - mean * mean == doctest::Approx(a * b / ((a + b) * (a + b) * (a + b + 1))).epsilon(0.03));
}

TEST_CASE("rational beliefs") {
  const auto base = rational_base_beliefs(Population::from_composition({{12, 12}, {12, 12}}));
  CHECK((base.base.array() == 0.5).all());
  CHECK((base.gamma.array() == 0.0).all());

  const auto pop = Population::from_composition({{18, 6}, {6, 18}});
  const auto corr = rational_base_beliefs(pop);
  CHECK(corr(0, 0) == 0.75);
  CHECK(corr(0, 1) == 0.25);
  CHECK(corr(20, 0) == 0.25);
  CHECK(corr(30, 1) == 0.75);

  const auto pure = rational_base_beliefs(Population::from_composition({{3, 0}, {1, 1}}));
  CHECK(pure(0, 0) == 1.0);
  CHECK(pure(0, 1) == 0.5);

  CHECK_THROWS(rational_base_beliefs(Population::from_labels({0, 2}, {0, 0})));
}

TEST_CASE("biased beliefs") {
  const auto pop = Population::from_composition({{12, 12}, {12, 12}});
  Rng rng(1);
  const auto inf = std::numeric_limits<double>::infinity();
  const auto none = biased_base_beliefs(pop, {1.0, inf}, rng);
  CHECK(none.base == rational_base_beliefs(pop).base);

  Rng r1(77), r2(77);
  const auto b1 = biased_base_beliefs(pop, {1.0, 7.0}, r1);
  const auto b2 = biased_base_beliefs(pop, {1.0, 7.0}, r2);
  CHECK(b1.base == b2.base);
  CHECK(b1.gamma == b2.gamma);
  for (int i = 0; i < pop.size(); ++i) {
    const double g = b1.gamma[i];
    const int own = pop.groups[i];
    CHECK(b1(i, own) == doctest::Approx(0.5 + 0.5 * g));
    CHECK(b1(i, 1 - own) == doctest::Approx(0.5 - 0.5 * g));
  }

  // Beta(a, 1) with huge a puts gamma at 1
  Rng r3(5);
  const auto maxed = biased_base_beliefs(pop, {1e12, 1.0}, r3);
  CHECK(maxed(0, 0) == doctest::Approx(1.0));
  CHECK(maxed(0, 1) == doctest::Approx(0.0));

  CHECK_THROWS(BiasParams{1.0, 0.5}.validate());
  CHECK_THROWS(BiasParams{0.0, 7.0}.validate());
  CHECK_NOTHROW(BiasParams{1.0, inf}.validate());
}

TEST_CASE("beta(1,7) calibration of the bias factor") {
  const auto pop = Population::from_composition({{50000}, {50000}});
  Rng rng(2024);
  const auto b = biased_base_beliefs(pop, {1.0, 7.0}, rng);
  const double le10 = (b.gamma.array() <= 0.1).cast<double>().mean();
  const double le20 = (b.gamma.array() <= 0.2).cast<double>().mean();
  CHECK(le10 == doctest::Approx(0.52).epsilon(0.02));
  CHECK(le20 == doctest::Approx(0.79).epsilon(0.02));
}

TEST_CASE("complete-information memory and effective beliefs") {
  const auto pop = Population::from_labels({0, 0, 1}, {0, 1, 0});
  const auto m = complete_info_memory(pop);
  CHECK((m.array() == 1).all());
  CHECK(m.rows() == 3);

  auto beliefs = BeliefTable::uniform(3, 2, 0.4);
  NetworkState net(3);
  CHECK(effective_belief(0, 1, beliefs, net, pop) == 0.4);
  net.add_link(0, 1);
  net.add_link(0, 2);
  CHECK(effective_belief(0, 1, beliefs, net, pop) == 0.0);
  CHECK(effective_belief(0, 2, beliefs, net, pop) == 1.0);
  net.remove_link(0, 2);
  CHECK(effective_belief(0, 2, beliefs, net, pop) == 1.0);
}

TEST_CASE("belief csv") {
  const auto pop = Population::from_composition({{1, 1}, {1, 0}});
  Rng rng(3);
  const auto b = biased_base_beliefs(pop, {1.0, 7.0}, rng);
  std::ostringstream os;
  write_belief_csv(os, b, pop);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "agent,group,type,gamma,pi_group_1,pi_group_2");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
}
