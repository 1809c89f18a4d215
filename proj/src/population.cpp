#include "netform/population.hpp"

#include <algorithm>
#include <stdexcept>

namespace netform {

Population Population::from_labels(const std::vector<int>& groups, const std::vector<int>& types) {
  if (groups.size() != types.size()) {
    throw std::invalid_argument("population: group and type label counts differ");
  }
  if (groups.empty()) throw std::invalid_argument("population: no agents");
  if (*std::min_element(groups.begin(), groups.end()) < 0 ||
      *std::min_element(types.begin(), types.end()) < 0) {
    throw std::invalid_argument("population: labels must be non-negative");
  }
  const int k = *std::max_element(groups.begin(), groups.end()) + 1;
  const int t = *std::max_element(types.begin(), types.end()) + 1;
  const int n = static_cast<int>(groups.size());

  Population pop;
  pop.groups = Eigen::Map<const Eigen::VectorXi>(groups.data(), n);
  pop.types = Eigen::Map<const Eigen::VectorXi>(types.data(), n);
  pop.census = Eigen::MatrixXi::Zero(k, t);
  for (int i = 0; i < n; ++i) ++pop.census(groups[i], types[i]);
  pop.group_sizes = pop.census.rowwise().sum();
  return pop;
}

Population Population::from_composition(const std::vector<std::vector<int>>& type_counts) {
  std::vector<int> groups;
  std::vector<int> types;
  for (std::size_t k = 0; k < type_counts.size(); ++k) {
    for (std::size_t t = 0; t < type_counts[k].size(); ++t) {
      if (type_counts[k][t] < 0) throw std::invalid_argument("population: negative type count");
      groups.insert(groups.end(), type_counts[k][t], static_cast<int>(k));
      types.insert(types.end(), type_counts[k][t], static_cast<int>(t));
    }
  }
  auto pop = from_labels(groups, types);
  // trailing empty groups/types still count as classes of the composition
  std::size_t max_types = 0;
  for (const auto& row : type_counts) max_types = std::max(max_types, row.size());
  if (static_cast<std::size_t>(pop.census.rows()) < type_counts.size() ||
      static_cast<std::size_t>(pop.census.cols()) < max_types) {
    Eigen::MatrixXi census = Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(type_counts.size()),
                                                   static_cast<Eigen::Index>(max_types));
    census.topLeftCorner(pop.census.rows(), pop.census.cols()) = pop.census;
    pop.census = census;
    pop.group_sizes = pop.census.rowwise().sum();
  }
  return pop;
}

}  // namespace netform
