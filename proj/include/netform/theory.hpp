#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "netform/beliefs.hpp"
#include "netform/costs.hpp"
#include "netform/network.hpp"
#include "netform/population.hpp"

namespace netform {

/// A closed-form belief threshold and whether its cost precondition holds.
struct Threshold {
  double value = 0.0;
  bool valid = false;
};

struct Thresholds {
  Threshold meet_always;     // (c_H - (delta - delta^2)) / (c_H - c_L), valid if c_H > delta - delta^2
  Threshold empty_unstable;  // (c_H - delta) / (c_H - c_L), valid if c_H > delta
  std::optional<Threshold> refuse_component;  // (c_H - (delta + (m-1) delta^2)) / (c_H - c_L)
};

Thresholds belief_thresholds(const CostStructure& costs, std::optional<int> component_size = std::nullopt);

/// Every (g, M) with M symmetric, unit diagonal and M >= links(g) that is pairwise stable.
/// Ordered by graph (edge bitmask over lexicographic pairs), then memory bitmask.
/// Throws if pop.size() > max_n or max_n > 8.
std::vector<NetworkState> enumerate_stable_states(const Population& pop, const CostStructure& costs,
                                                  const BeliefTable& beliefs, int max_n = 8);

/// Graph bitmask of a state over lexicographic pairs (n <= 11).
std::uint64_t graph_mask(const NetworkState& net);

enum class Claim { P1, C1, P2, C2, L1, P3i, P3ii, P4 };
enum class Verdict { Confirmed, Violated };

std::string_view to_string(Claim claim);
std::string_view to_string(Verdict verdict);
Claim parse_claim(std::string_view text);
std::vector<Claim> all_claims();

struct BeliefRange {
  double lo = 0.0;
  double hi = 1.0;
};

/// Inputs to a claim check. Populations are random per trial unless `composition`
/// (type counts per group) is given.
struct ClaimParams {
  CostStructure costs;
  BeliefRange own_group;
  BeliefRange other_group;
  std::vector<std::vector<int>> composition;
  int max_agents = 6;      // dynamics trials draw n in [2, max_agents]
  int enumerate_up_to = 5;  // enumeration trials use n <= this
};

/// Parameterization each claim is checked on by default.
ClaimParams preset_params(Claim claim);

struct Counterexample {
  Population pop;
  BeliefTable beliefs;
  NetworkState net;
  std::optional<Edge> pair;
  std::string note;
};

struct VerificationReport {
  Claim claim = Claim::P1;
  ClaimParams params;
  Verdict verdict = Verdict::Confirmed;
  std::optional<Counterexample> counterexample;
  std::uint64_t seed = 0;
  int trials = 0;
  long checks = 0;  // individual assertions evaluated
  std::string detail;
};

/// Thrown when parameters do not satisfy a claim's hypotheses.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

VerificationReport check_proposition(Claim claim, const ClaimParams& params, int trials, std::uint64_t seed);

struct SubsetReport {
  Verdict verdict = Verdict::Confirmed;
  std::size_t complete_stable = 0;    // |G^C_S|, distinct graphs
  std::size_t incomplete_stable = 0;  // |G^IC_S|, distinct graphs
  bool strict = false;
  std::optional<std::uint64_t> missing_graph;   // in G^C_S but not G^IC_S
  std::optional<std::uint64_t> extra_graph;     // in G^IC_S but not G^C_S
};

/// Compares the graphs stable under complete information (M all ones) with the graphs
/// of every stable (g, M) under the given beliefs. With `require_optimism` the beliefs must
/// clear the meet-always threshold (and c_L <= delta - delta^2), else PreconditionError.
SubsetReport check_subset_relation(const Population& pop, const CostStructure& costs, const BeliefTable& beliefs,
                                   int max_n = 5, bool require_optimism = true);

/// sum_i u_i(g).
double total_utility(const NetworkState& net, const Population& pop, const CostStructure& costs);

}  // namespace netform
