#include "netform/metrics.hpp"

#include <stdexcept>

namespace netform {
namespace {

const Eigen::VectorXi& labels(const Population& pop, Partition partition) {
  return partition == Partition::ByGroup ? pop.groups : pop.types;
}

Eigen::VectorXi class_sizes(const Population& pop, Partition partition) {
  return partition == Partition::ByGroup ? Eigen::VectorXi(pop.group_sizes)
                                         : Eigen::VectorXi(pop.census.colwise().sum().transpose());
}

}  // namespace

std::optional<double> inter_group_proportion(const NetworkState& net, const Population& pop, Partition partition) {
  if (net.link_count() == 0) return std::nullopt;
  const auto& label = labels(pop, partition);
  long crossing = 0;
  for (const auto& [i, j] : net.edges()) crossing += label[i] != label[j];
  return static_cast<double>(crossing) / net.link_count();
}

FreemanIndex freeman_index(const NetworkState& net, const Population& pop, Partition partition) {
  const Eigen::VectorXd sizes = class_sizes(pop, partition).cast<double>();
  if ((sizes.array() > 0).count() < 2) {
    throw std::invalid_argument("freeman_index: needs at least two non-empty classes");
  }
  const auto p = inter_group_proportion(net, pop, partition);
  if (!p) return {1.0, true};
  const double n = pop.size();
  const double total = sizes.sum();
  const double expected = total * total - sizes.squaredNorm();
  return {1.0 - *p * n * (n - 1.0) / expected, false};
}

std::optional<double> incremental_segregation(std::optional<double> p_base, std::optional<double> p_biased) {
  if (!p_base || *p_base == 0.0) return std::nullopt;
  const double biased = p_biased.value_or(0.0);
  return (*p_base - biased) / *p_base;
}

double mean_degree(const NetworkState& net) {
  const int n = net.size();
  if (n < 2) throw std::invalid_argument("mean_degree: needs at least two agents");
  return 2.0 * net.link_count() / (static_cast<double>(n) * (n - 1));
}

double discovery(const NetworkState& net) {
  const double n = net.size();
  return static_cast<double>(net.memory_ones()) / (n * n);
}

MetricsRecord compute_metrics(const NetworkState& net, const Population& pop, Partition partition) {
  MetricsRecord rec;
  rec.p_inter = inter_group_proportion(net, pop, partition);
  rec.freeman = freeman_index(net, pop, partition);
  rec.mean_degree = mean_degree(net);
  rec.discovery = discovery(net);
  return rec;
}

}  // namespace netform
