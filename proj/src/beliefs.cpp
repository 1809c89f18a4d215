#include "netform/beliefs.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "netform/csv.hpp"

namespace netform {

BeliefTable BeliefTable::uniform(int n, int groups, double value) {
  if (!(value >= 0.0 && value <= 1.0)) throw std::invalid_argument("beliefs: value outside [0,1]");
  return {Eigen::MatrixXd::Constant(n, groups, value), Eigen::VectorXd::Zero(n)};
}

void BiasParams::validate() const {
  if (!(alpha > 0.0) || std::isinf(alpha)) throw std::invalid_argument("bias: alpha must be positive and finite");
  if (!(beta >= 1.0)) throw std::invalid_argument("bias: beta must be >= 1");
}

BeliefTable rational_base_beliefs(const Population& pop) {
  const int n = pop.size();
  const int k_count = pop.group_count();
  for (int k = 0; k < k_count; ++k) {
    if (pop.group_sizes[k] == 0) throw std::invalid_argument("beliefs: a social group has no members");
  }
  BeliefTable table{Eigen::MatrixXd(n, k_count), Eigen::VectorXd::Zero(n)};
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < k_count; ++k) {
      table.base(i, k) = static_cast<double>(pop.census(k, pop.types[i])) / pop.group_sizes[k];
    }
  }
  return table;
}

BeliefTable biased_base_beliefs(const Population& pop, const BiasParams& params, Rng& rng) {
  params.validate();
  BeliefTable table = rational_base_beliefs(pop);
  for (int i = 0; i < pop.size(); ++i) {
    const double g = rng.beta(params.alpha, params.beta);
    table.gamma[i] = g;
    for (int k = 0; k < table.groups(); ++k) {
      const double r = table.base(i, k);
      table.base(i, k) = (k == pop.groups[i]) ? r + (1.0 - r) * g : r - r * g;
    }
  }
  return table;
}

BitMatrix complete_info_memory(const Population& pop) {
  return BitMatrix::Ones(pop.size(), pop.size());
}

double effective_belief(AgentId i, AgentId j, const BeliefTable& beliefs, const NetworkState& net,
                        const Population& pop) {
  if (i == j) throw std::invalid_argument("effective_belief: i == j");
  if (net.acquainted(i, j)) return pop.same_type(i, j) ? 1.0 : 0.0;
  return beliefs(i, pop.groups[j]);
}

void write_belief_csv(std::ostream& out, const BeliefTable& beliefs, const Population& pop) {
  out << "agent,group,type,gamma";
  for (int k = 0; k < beliefs.groups(); ++k) out << ",pi_group_" << (k + 1);
  out << '\n';
  for (int i = 0; i < pop.size(); ++i) {
    out << i << ',' << (pop.groups[i] + 1) << ',' << (pop.types[i] + 1) << ',' << csv::num(beliefs.gamma[i]);
    for (int k = 0; k < beliefs.groups(); ++k) out << ',' << csv::num(beliefs.base(i, k));
    out << '\n';
  }
}

}  // namespace netform
