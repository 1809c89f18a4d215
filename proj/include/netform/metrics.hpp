#pragma once

#include <optional>

#include "netform/network.hpp"
#include "netform/population.hpp"

namespace netform {

/// Which labels define the classes a link can cross.
enum class Partition { ByGroup, ByType };

struct FreemanIndex {
  double value = 1.0;
  bool collapsed = false;  // empty graph; value is the limiting convention 1
};

struct MetricsRecord {
  std::optional<double> p_inter;
  FreemanIndex freeman;
  std::optional<double> s_is_vs_rational;
  std::optional<double> s_is_vs_complete;
  double mean_degree = 0.0;
  double discovery = 0.0;
};

/// Share of links whose endpoints fall in different classes; nullopt for the empty graph.
std::optional<double> inter_group_proportion(const NetworkState& net, const Population& pop,
                                             Partition partition = Partition::ByGroup);

/// S_F = 1 - p n(n-1) / ((sum_k n_k)^2 - sum_k n_k^2) over the non-empty classes.
/// Throws std::invalid_argument if fewer than two classes are populated.
FreemanIndex freeman_index(const NetworkState& net, const Population& pop, Partition partition = Partition::ByGroup);

/// (p_base - p_biased) / p_base. Undefined without a baseline link share.
/// A collapsed (link-free) biased network counts as p_biased = 0.
std::optional<double> incremental_segregation(std::optional<double> p_base, std::optional<double> p_biased);

/// Mean of degree / (n - 1). Requires n >= 2.
double mean_degree(const NetworkState& net);

/// sum_ij M_ij / n^2.
double discovery(const NetworkState& net);

/// Everything except the incremental indices, which need paired runs.
MetricsRecord compute_metrics(const NetworkState& net, const Population& pop, Partition partition = Partition::ByGroup);

}  // namespace netform
