#pragma once

#include <Eigen/Core>

#include <vector>

namespace netform {

using AgentId = int;

/// Agents with an observable social group and a hidden type.
/// Labels are zero-based: groups in [0, K), types in [0, T).
struct Population {
  Eigen::VectorXi groups;
  Eigen::VectorXi types;
  Eigen::VectorXi group_sizes;  // n_{k+}
  Eigen::MatrixXi census;       // K x T, n_{k,t}

  int size() const { return static_cast<int>(groups.size()); }
  int group_count() const { return static_cast<int>(census.rows()); }
  int type_count() const { return static_cast<int>(census.cols()); }

  bool same_type(AgentId i, AgentId j) const { return types[i] == types[j]; }
  bool same_group(AgentId i, AgentId j) const { return groups[i] == groups[j]; }

  /// Builds census counts from per-agent labels. Rejects empty populations,
  /// negative labels and mismatched lengths.
  static Population from_labels(const std::vector<int>& groups, const std::vector<int>& types);

  /// type_counts[k][t] agents of type t in group k; agents are laid out group by
  /// group, types in ascending order within each group.
  static Population from_composition(const std::vector<std::vector<int>>& type_counts);
};

}  // namespace netform
