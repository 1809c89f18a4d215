#include "netform/utility.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace netform {
namespace {

// Level-synchronous BFS over packed adjacency rows. `skip` is an edge treated as absent.
void bfs(const NetworkState& net, AgentId src, Eigen::Ref<Eigen::VectorXi> dist, Edge skip = {-1, -1}) {
  const int n = net.size();
  const std::size_t words = net.words_per_row();
  thread_local std::vector<std::uint64_t> visited, frontier, next;
  visited.assign(words, 0);
  frontier.assign(words, 0);
  next.assign(words, 0);

  dist.setConstant(kUnreachable);
  dist[src] = 0;
  visited[static_cast<std::size_t>(src) / 64] |= 1ULL << (src % 64);
  frontier[static_cast<std::size_t>(src) / 64] |= 1ULL << (src % 64);

  for (int level = 1; level < n; ++level) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t bits = frontier[w];
      while (bits) {
        const int u = static_cast<int>(w * 64) + std::countr_zero(bits);
        bits &= bits - 1;
        const auto row = net.row_bits(u);
        if (u == skip.first || u == skip.second) {
          const AgentId other = u == skip.first ? skip.second : skip.first;
          const std::size_t ox = static_cast<std::size_t>(other) / 64;
          for (std::size_t x = 0; x < words; ++x) {
            next[x] |= x == ox ? row[x] & ~(1ULL << (other % 64)) : row[x];
          }
        } else {
          for (std::size_t x = 0; x < words; ++x) next[x] |= row[x];
        }
      }
    }
    bool any = false;
    for (std::size_t w = 0; w < words; ++w) {
      next[w] &= ~visited[w];
      any |= next[w] != 0;
    }
    if (!any) break;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t bits = next[w];
      visited[w] |= bits;
      while (bits) {
        dist[static_cast<int>(w * 64) + std::countr_zero(bits)] = level;
        bits &= bits - 1;
      }
      frontier[w] = next[w];
    }
  }
}

std::vector<double> decay_table(double delta, int n) {
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  for (int d = 0; d <= n; ++d) out[static_cast<std::size_t>(d)] = std::pow(delta, d);
  return out;
}

inline double decay(const std::vector<double>& table, int d) {
  return d == kUnreachable ? 0.0 : table[static_cast<std::size_t>(d)];
}

// sum_{k != i} (delta^{after_k} - delta^{before_k}), skipping unchanged entries
double benefit_change(const std::vector<double>& table, AgentId i, const Eigen::Ref<const Eigen::VectorXi>& before,
                      const Eigen::Ref<const Eigen::VectorXi>& after) {
  double sum = 0.0;
  for (Eigen::Index k = 0; k < before.size(); ++k) {
    if (k == i || before[k] == after[k]) continue;
    sum += decay(table, after[k]) - decay(table, before[k]);
  }
  return sum;
}

// Distances from i in g + ij given distance rows from i and j in g.
void distances_after_addition(const Eigen::Ref<const Eigen::VectorXi>& from_i,
                              const Eigen::Ref<const Eigen::VectorXi>& from_j, Eigen::Ref<Eigen::VectorXi> out) {
  for (Eigen::Index k = 0; k < from_i.size(); ++k) {
    const int via_j = from_j[k] == kUnreachable ? kUnreachable : from_j[k] + 1;
    out[k] = std::min(from_i[k], via_j);
  }
}

void require_pair(const NetworkState& net, AgentId i, AgentId j) {
  if (i < 0 || j < 0 || i >= net.size() || j >= net.size()) throw std::out_of_range("agent id out of range");
  if (i == j) throw std::invalid_argument("pair must consist of two distinct agents");
}

}  // namespace

Eigen::VectorXi geodesic_distances(const NetworkState& net, AgentId i) {
  if (i < 0 || i >= net.size()) throw std::out_of_range("geodesic_distances: agent id out of range");
  Eigen::VectorXi dist(net.size());
  bfs(net, i, dist);
  return dist;
}

Eigen::MatrixXi all_geodesic_distances(const NetworkState& net) {
  const int n = net.size();
  Eigen::MatrixXi dist(n, n);
  for (int i = 0; i < n; ++i) bfs(net, i, dist.col(i));
  return dist;  // symmetric, column i == row i
}

double actual_utility(const NetworkState& net, const Population& pop, const CostStructure& costs, AgentId i) {
  const auto dist = geodesic_distances(net, i);
  const auto table = decay_table(costs.delta, net.size());
  double benefit = 0.0;
  double cost = 0.0;
  for (int j = 0; j < net.size(); ++j) {
    if (j == i) continue;
    benefit += decay(table, dist[j]);
    if (net.linked(i, j)) cost += costs.cost(pop.same_type(i, j));
  }
  return benefit - cost;
}

double expected_cost(AgentId i, AgentId j, const BeliefTable& beliefs, const NetworkState& net,
                     const Population& pop, const CostStructure& costs) {
  require_pair(net, i, j);
  if (net.acquainted(i, j)) return costs.cost(pop.same_type(i, j));
  const double pi = beliefs(i, pop.groups[j]);
  return pi * costs.c_low + (1.0 - pi) * costs.c_high;
}

double expected_incremental_utility(const NetworkState& net, const Population& pop, const CostStructure& costs,
                                    const BeliefTable& beliefs, AgentId i, AgentId j) {
  require_pair(net, i, j);
  if (net.linked(i, j)) throw std::invalid_argument("expected_incremental_utility: ij is already a link");
  const auto from_i = geodesic_distances(net, i);
  const auto from_j = geodesic_distances(net, j);
  Eigen::VectorXi after(net.size());
  distances_after_addition(from_i, from_j, after);
  const auto table = decay_table(costs.delta, net.size());
  return benefit_change(table, i, from_i, after) - expected_cost(i, j, beliefs, net, pop, costs);
}

double deletion_gain(const NetworkState& net, const Population& pop, const CostStructure& costs, AgentId i,
                     AgentId j) {
  require_pair(net, i, j);
  if (!net.linked(i, j)) throw std::invalid_argument("deletion_gain: ij is not a link");
  const auto before = geodesic_distances(net, i);
  Eigen::VectorXi after(net.size());
  bfs(net, i, after, {i, j});
  const auto table = decay_table(costs.delta, net.size());
  return benefit_change(table, i, before, after) + costs.cost(pop.same_type(i, j));
}

LinkEvaluator::LinkEvaluator(const NetworkState& net, const Population& pop, const CostStructure& costs,
                             const BeliefTable& beliefs)
    : net_(net),
      pop_(pop),
      costs_(costs),
      beliefs_(beliefs),
      dist_(all_geodesic_distances(net)),
      decay_(decay_table(costs.delta, net.size())),
      scratch_(net.size()) {}

double LinkEvaluator::deletion_gain(AgentId i, AgentId j) const {
  bfs(net_, i, scratch_, {i, j});
  return benefit_change(decay_, i, dist_.col(i), scratch_) + costs_.cost(pop_.same_type(i, j));
}

double LinkEvaluator::addition_benefit(AgentId i, AgentId j) const {
  distances_after_addition(dist_.col(i), dist_.col(j), scratch_);
  return benefit_change(decay_, i, dist_.col(i), scratch_);
}

double LinkEvaluator::expected_gain(AgentId i, AgentId j) const {
  return addition_benefit(i, j) - expected_cost(i, j, beliefs_, net_, pop_, costs_);
}

std::optional<StabilityWitness> LinkEvaluator::check_pair(AgentId i, AgentId j) const {
  if (net_.linked(i, j)) {
    if (deletion_gain(i, j) > 0.0 || deletion_gain(j, i) > 0.0) {
      return StabilityWitness{i, j, Violation::DeletionProfitable};
    }
    return std::nullopt;
  }
  if (expected_gain(i, j) >= 0.0 && expected_gain(j, i) >= 0.0) {
    return StabilityWitness{i, j, Violation::AdditionAcceptable};
  }
  return std::nullopt;
}

StabilityReport is_pairwise_stable(const NetworkState& net, const Population& pop, const CostStructure& costs,
                                   const BeliefTable& beliefs) {
  const LinkEvaluator eval(net, pop, costs, beliefs);
  for (int i = 0; i < net.size(); ++i) {
    for (int j = i + 1; j < net.size(); ++j) {
      if (auto w = eval.check_pair(i, j)) return {false, w};
    }
  }
  return {true, std::nullopt};
}

}  // namespace netform
