#pragma once

#include <Eigen/Core>

#include <limits>
#include <optional>
#include <vector>

#include "netform/beliefs.hpp"
#include "netform/costs.hpp"
#include "netform/network.hpp"
#include "netform/population.hpp"

namespace netform {

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

/// BFS distances from i; kUnreachable for other components.
Eigen::VectorXi geodesic_distances(const NetworkState& net, AgentId i);
Eigen::MatrixXi all_geodesic_distances(const NetworkState& net);

/// u_i(g) = sum_{j != i} delta^{d_ij} - sum_{ij in g} c(t_i, t_j). Unreachable agents contribute 0.
double actual_utility(const NetworkState& net, const Population& pop, const CostStructure& costs, AgentId i);

/// True cost for acquainted pairs, pi c_low + (1 - pi) c_high otherwise.
double expected_cost(AgentId i, AgentId j, const BeliefTable& beliefs, const NetworkState& net,
                     const Population& pop, const CostStructure& costs);

/// E_i[u_ij]: benefit change of adding ij (exact distances in g + ij) minus expected cost.
/// Throws std::invalid_argument if ij is already a link.
double expected_incremental_utility(const NetworkState& net, const Population& pop, const CostStructure& costs,
                                    const BeliefTable& beliefs, AgentId i, AgentId j);

/// u_i(g - ij) - u_i(g). Throws if ij is not a link.
double deletion_gain(const NetworkState& net, const Population& pop, const CostStructure& costs, AgentId i,
                     AgentId j);

enum class Violation {
  DeletionProfitable,  // an endpoint strictly gains by cutting the link
  AdditionAcceptable,  // both endpoints expect a non-negative gain
};

struct StabilityWitness {
  AgentId i = 0;
  AgentId j = 0;
  Violation violation = Violation::DeletionProfitable;

  bool operator==(const StabilityWitness&) const = default;
};

struct StabilityReport {
  bool stable = true;
  std::optional<StabilityWitness> witness;
};

/// Evaluates link decisions against a fixed state. All-pairs distances are computed
/// once on construction, so each query is a single BFS (deletion) or O(n) (addition).
/// Holds references: the state must outlive the evaluator and stay unmodified.
class LinkEvaluator {
 public:
  LinkEvaluator(const NetworkState& net, const Population& pop, const CostStructure& costs,
                const BeliefTable& beliefs);

  double deletion_gain(AgentId i, AgentId j) const;
  double expected_gain(AgentId i, AgentId j) const;
  /// Benefit part of E_i[u_ij] alone: how much i's decayed reach grows if ij is added.
  double addition_benefit(AgentId i, AgentId j) const;
  /// The violated condition for pair ij, if any. Deletion wins over the (impossible) add case.
  std::optional<StabilityWitness> check_pair(AgentId i, AgentId j) const;

  const Eigen::MatrixXi& distances() const { return dist_; }

 private:
  const NetworkState& net_;
  const Population& pop_;
  const CostStructure& costs_;
  const BeliefTable& beliefs_;
  Eigen::MatrixXi dist_;
  std::vector<double> decay_;
  mutable Eigen::VectorXi scratch_;
};

/// Pairwise stability with the first violating pair (lexicographic) as witness.
StabilityReport is_pairwise_stable(const NetworkState& net, const Population& pop, const CostStructure& costs,
                                   const BeliefTable& beliefs);

}  // namespace netform
