#pragma once

#include <Eigen/Core>

#include <iosfwd>

#include "netform/network.hpp"
#include "netform/population.hpp"
#include "netform/rng.hpp"

namespace netform {

/// Base beliefs pi_i(k): agent i's prior that a member of group k shares i's type.
struct BeliefTable {
  Eigen::MatrixXd base;   // n x K
  Eigen::VectorXd gamma;  // per-agent bias factor

  double operator()(AgentId i, int group) const { return base(i, group); }
  int agents() const { return static_cast<int>(base.rows()); }
  int groups() const { return static_cast<int>(base.cols()); }

  /// Same belief everywhere; gamma = 0.
  static BeliefTable uniform(int n, int groups, double value);
};

/// Shape parameters of the Beta law the per-agent bias is drawn from.
struct BiasParams {
  double alpha = 1.0;
  double beta = 7.0;  // +inf means no bias

  void validate() const;
};

/// pi_i(k) = n_{k, t_i} / n_{k+}. Rejects groups without members.
BeliefTable rational_base_beliefs(const Population& pop);

/// One gamma_i ~ Beta(alpha, beta) per agent, drawn in agent order from `rng`.
/// Own group: r + (1 - r) gamma_i. Other groups: r - r gamma_i. r is the rational anchor.
BeliefTable biased_base_beliefs(const Population& pop, const BiasParams& params, Rng& rng);

/// All-ones memory: every agent already knows every type.
BitMatrix complete_info_memory(const Population& pop);

/// Belief after memory: 1 or 0 for acquainted pairs by true type, base value otherwise.
double effective_belief(AgentId i, AgentId j, const BeliefTable& beliefs, const NetworkState& net,
                        const Population& pop);

/// agent,group,type,gamma,pi_group_1..pi_group_K (groups one-based in the header).
void write_belief_csv(std::ostream& out, const BeliefTable& beliefs, const Population& pop);

}  // namespace netform
