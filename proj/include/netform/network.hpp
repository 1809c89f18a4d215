#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "netform/population.hpp"

namespace netform {

using BitMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;
using Edge = std::pair<AgentId, AgentId>;

/// Undirected simple graph plus the memory matrix M of who knows whose type.
///
/// Invariants maintained by every mutator:
///   adjacency symmetric with zero diagonal,
///   M symmetric with unit diagonal,
///   linked pairs are acquainted.
/// Removing a link never clears memory.
class NetworkState {
 public:
  NetworkState() = default;
  /// Empty graph, every agent knows only itself.
  explicit NetworkState(int n);
  /// Empty graph with the given memory matrix (validated).
  static NetworkState with_memory(const BitMatrix& memory);
  /// Graph from an edge list, memory = identity plus the links.
  static NetworkState from_edges(int n, std::span<const Edge> edges);

  int size() const { return static_cast<int>(adjacency_.rows()); }
  bool linked(AgentId i, AgentId j) const { return adjacency_(i, j) != 0; }
  bool acquainted(AgentId i, AgentId j) const { return memory_(i, j) != 0; }

  /// Adds ij and marks the pair acquainted. Returns how many memory entries flipped (0 or 2).
  int add_link(AgentId i, AgentId j);
  void remove_link(AgentId i, AgentId j);
  /// Marks i and j acquainted without linking them.
  int meet(AgentId i, AgentId j);

  const BitMatrix& adjacency() const { return adjacency_; }
  const BitMatrix& memory() const { return memory_; }

  /// Adjacency row as packed 64-bit words, bit j set iff ij is a link.
  std::span<const std::uint64_t> row_bits(AgentId i) const {
    return {bits_.data() + static_cast<std::size_t>(i) * words_, words_};
  }
  std::size_t words_per_row() const { return words_; }

  int degree(AgentId i) const;
  int link_count() const { return links_; }
  /// Number of ones in M, the information measure of improving paths.
  long memory_ones() const { return memory_ones_; }
  std::vector<Edge> edges() const;

  /// Throws std::logic_error if any invariant is broken.
  void validate() const;

  bool operator==(const NetworkState& other) const {
    return adjacency_ == other.adjacency_ && memory_ == other.memory_;
  }

 private:
  void check_pair(AgentId i, AgentId j) const;

  BitMatrix adjacency_;
  BitMatrix memory_;
  std::vector<std::uint64_t> bits_;
  std::size_t words_ = 0;
  int links_ = 0;
  long memory_ones_ = 0;
};

}  // namespace netform
