#pragma once

// Converts library state into oracle::Model and draws random small instances.

#include "netform/beliefs.hpp"
#include "netform/costs.hpp"
#include "netform/network.hpp"
#include "netform/population.hpp"
#include "netform/rng.hpp"
#include "oracle.hpp"

namespace testing_support {

inline oracle::Model to_model(const netform::NetworkState& net, const netform::Population& pop,
                              const netform::CostStructure& costs, const netform::BeliefTable& beliefs) {
  oracle::Model m;
  m.delta = costs.delta;
  m.c_low = costs.c_low;
  m.c_high = costs.c_high;
  const int n = net.size();
  m.link.assign(n, std::vector<int>(n, 0));
  m.known.assign(n, std::vector<int>(n, 0));
  m.pi.assign(n, std::vector<double>(beliefs.groups(), 0.0));
  for (int i = 0; i < n; ++i) {
    m.group.push_back(pop.groups[i]);
    m.type.push_back(pop.types[i]);
    for (int j = 0; j < n; ++j) {
      m.link[i][j] = net.adjacency()(i, j);
      m.known[i][j] = net.memory()(i, j);
    }
    for (int k = 0; k < beliefs.groups(); ++k) m.pi[i][k] = beliefs(i, k);
  }
  return m;
}

struct Instance {
  netform::Population pop;
  netform::CostStructure costs;
  netform::BeliefTable beliefs;
  netform::NetworkState net;
};

// n in [2, max_n], up to 3 groups and types, random links and acquaintances.
// Beliefs are sometimes snapped to a small grid so exact ties at zero show up.
inline Instance random_instance(netform::Rng& rng, int max_n = 6) {
  using namespace netform;
  Instance x;
  const int n = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_n - 1)));
  std::vector<int> g(n), t(n);
  const int k = 1 + static_cast<int>(rng.below(3));
  const int ty = 1 + static_cast<int>(rng.below(3));
  for (int i = 0; i < n; ++i) {
    g[i] = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
    t[i] = static_cast<int>(rng.below(static_cast<std::uint64_t>(ty)));
  }
  x.pop = Population::from_labels(g, t);
  x.costs.delta = 0.3 + 0.65 * rng.uniform();
  x.costs.c_low = 0.05 + 0.5 * rng.uniform();
  x.costs.c_high = x.costs.c_low + 0.05 + 2.0 * rng.uniform();
  const bool snap = rng.below(3) == 0;
  x.beliefs = BeliefTable::uniform(n, x.pop.group_count(), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < x.pop.group_count(); ++c) {
      const double u = rng.uniform();
      x.beliefs.base(i, c) = snap ? std::round(u * 4.0) / 4.0 : u;
    }
  }
  x.net = NetworkState(n);
  const double p_link = rng.uniform();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double u = rng.uniform();
      if (u < p_link) {
        x.net.add_link(i, j);
      } else if (u < p_link + 0.3 * (1.0 - p_link)) {
        x.net.meet(i, j);
      }
    }
  }
  return x;
}

}  // namespace testing_support
