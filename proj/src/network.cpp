#include "netform/network.hpp"

#include <stdexcept>
#include <string>

namespace netform {

NetworkState::NetworkState(int n) {
  if (n <= 0) throw std::invalid_argument("network: agent count must be positive");
  adjacency_ = BitMatrix::Zero(n, n);
  memory_ = BitMatrix::Identity(n, n);
  words_ = (static_cast<std::size_t>(n) + 63) / 64;
  bits_.assign(words_ * static_cast<std::size_t>(n), 0);
  memory_ones_ = n;
}

NetworkState NetworkState::with_memory(const BitMatrix& memory) {
  if (memory.rows() != memory.cols() || memory.rows() == 0) {
    throw std::invalid_argument("network: memory matrix must be square and non-empty");
  }
  NetworkState net(static_cast<int>(memory.rows()));
  for (Eigen::Index i = 0; i < memory.rows(); ++i) {
    if (memory(i, i) != 1) throw std::invalid_argument("network: memory diagonal must be 1");
    for (Eigen::Index j = 0; j < memory.cols(); ++j) {
      if (memory(i, j) > 1) throw std::invalid_argument("network: memory entries must be 0/1");
      if (memory(i, j) != memory(j, i)) throw std::invalid_argument("network: memory must be symmetric");
    }
  }
  net.memory_ = memory;
  net.memory_ones_ = memory.cast<long>().sum();
  return net;
}

NetworkState NetworkState::from_edges(int n, std::span<const Edge> edges) {
  NetworkState net(n);
  for (const auto& [i, j] : edges) {
    if (net.linked(i, j)) throw std::invalid_argument("network: duplicate edge");
    net.add_link(i, j);
  }
  return net;
}

void NetworkState::check_pair(AgentId i, AgentId j) const {
  if (i < 0 || j < 0 || i >= size() || j >= size()) {
    throw std::out_of_range("network: agent id out of range");
  }
  if (i == j) throw std::invalid_argument("network: self-loops are not allowed");
}

int NetworkState::meet(AgentId i, AgentId j) {
  check_pair(i, j);
  if (memory_(i, j)) return 0;
  memory_(i, j) = memory_(j, i) = 1;
  memory_ones_ += 2;
  return 2;
}

int NetworkState::add_link(AgentId i, AgentId j) {
  check_pair(i, j);
  if (linked(i, j)) throw std::logic_error("network: link already present");
  adjacency_(i, j) = adjacency_(j, i) = 1;
  bits_[static_cast<std::size_t>(i) * words_ + static_cast<std::size_t>(j) / 64] |= 1ULL << (j % 64);
  bits_[static_cast<std::size_t>(j) * words_ + static_cast<std::size_t>(i) / 64] |= 1ULL << (i % 64);
  ++links_;
  return meet(i, j);
}

void NetworkState::remove_link(AgentId i, AgentId j) {
  check_pair(i, j);
  if (!linked(i, j)) throw std::logic_error("network: link not present");
  adjacency_(i, j) = adjacency_(j, i) = 0;
  bits_[static_cast<std::size_t>(i) * words_ + static_cast<std::size_t>(j) / 64] &= ~(1ULL << (j % 64));
  bits_[static_cast<std::size_t>(j) * words_ + static_cast<std::size_t>(i) / 64] &= ~(1ULL << (i % 64));
  --links_;
}

int NetworkState::degree(AgentId i) const {
  return adjacency_.row(i).cast<int>().sum();
}

std::vector<Edge> NetworkState::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(links_));
  for (int i = 0; i < size(); ++i) {
    for (int j = i + 1; j < size(); ++j) {
      if (linked(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

void NetworkState::validate() const {
  const int n = size();
  int links = 0;
  for (int i = 0; i < n; ++i) {
    if (adjacency_(i, i) != 0) throw std::logic_error("network: self-loop at " + std::to_string(i));
    if (memory_(i, i) != 1) throw std::logic_error("network: agent does not know itself");
    for (int j = 0; j < n; ++j) {
      if (adjacency_(i, j) != adjacency_(j, i)) throw std::logic_error("network: asymmetric adjacency");
      if (memory_(i, j) != memory_(j, i)) throw std::logic_error("network: asymmetric memory");
      if (adjacency_(i, j) && !memory_(i, j)) throw std::logic_error("network: linked pair not acquainted");
      const bool bit = (row_bits(i)[static_cast<std::size_t>(j) / 64] >> (j % 64)) & 1ULL;
      if (bit != (adjacency_(i, j) != 0)) throw std::logic_error("network: bit rows out of sync");
      if (j > i && adjacency_(i, j)) ++links;
    }
  }
  if (links != links_) throw std::logic_error("network: link count out of sync");
  if (memory_.cast<long>().sum() != memory_ones_) throw std::logic_error("network: memory count out of sync");
}

}  // namespace netform
