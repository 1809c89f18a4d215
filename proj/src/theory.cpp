#include "netform/theory.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "netform/csv.hpp"
#include "netform/dynamics.hpp"
#include "netform/rng.hpp"
#include "netform/utility.hpp"

namespace netform {
namespace {

std::vector<Edge> lex_pairs(int n) {
  std::vector<Edge> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

NetworkState graph_from_mask(int n, const std::vector<Edge>& pairs, std::uint64_t mask) {
  NetworkState net(n);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if ((mask >> p) & 1ULL) net.add_link(pairs[p].first, pairs[p].second);
  }
  return net;
}

bool knows_everyone(const NetworkState& net) {
  return net.memory_ones() == static_cast<long>(net.size()) * net.size();
}

std::optional<Edge> first_unknown_pair(const NetworkState& net) {
  for (int i = 0; i < net.size(); ++i) {
    for (int j = i + 1; j < net.size(); ++j) {
      if (!net.acquainted(i, j)) return Edge{i, j};
    }
  }
  return std::nullopt;
}

// component label per agent and component sizes
std::pair<std::vector<int>, std::vector<int>> components(const NetworkState& net) {
  const auto dist = all_geodesic_distances(net);
  std::vector<int> label(static_cast<std::size_t>(net.size()), -1);
  std::vector<int> sizes;
  for (int i = 0; i < net.size(); ++i) {
    if (label[static_cast<std::size_t>(i)] >= 0) continue;
    const int c = static_cast<int>(sizes.size());
    sizes.push_back(0);
    for (int j = 0; j < net.size(); ++j) {
      if (dist(j, i) != kUnreachable) {
        label[static_cast<std::size_t>(j)] = c;
        ++sizes.back();
      }
    }
  }
  return {label, sizes};
}

double draw(Rng& rng, const BeliefRange& range) { return range.lo + (range.hi - range.lo) * rng.uniform(); }

Population random_population(Rng& rng, int n_min, int n_max) {
  const int n = n_min + static_cast<int>(rng.below(static_cast<std::uint64_t>(n_max - n_min + 1)));
  const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(3, n))));
  const int t = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(3, n))));
  std::vector<int> groups(static_cast<std::size_t>(n));
  std::vector<int> types(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    groups[static_cast<std::size_t>(i)] = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
    types[static_cast<std::size_t>(i)] = static_cast<int>(rng.below(static_cast<std::uint64_t>(t)));
  }
  return Population::from_labels(groups, types);
}

BeliefTable random_beliefs(Rng& rng, const Population& pop, const BeliefRange& own, const BeliefRange& other) {
  BeliefTable table = BeliefTable::uniform(pop.size(), pop.group_count(), 0.0);
  for (int i = 0; i < pop.size(); ++i) {
    for (int k = 0; k < pop.group_count(); ++k) {
      table.base(i, k) = draw(rng, k == pop.groups[i] ? own : other);
    }
  }
  return table;
}

std::string fmt(double v) { return csv::num(v); }

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError("precondition violated: " + what);
}

double low_cost_bound(const CostStructure& c) { return c.delta - c.delta * c.delta; }

// Shared state of one claim check.
struct Checker {
  VerificationReport report;
  Rng rng;

  Checker(Claim claim, const ClaimParams& params, int trials, std::uint64_t seed) : rng(seed) {
    report.claim = claim;
    report.params = params;
    report.seed = seed;
    report.trials = trials;
  }

  Population population() {
    const auto& p = report.params;
    return p.composition.empty() ? random_population(rng, 2, p.max_agents) : Population::from_composition(p.composition);
  }
  Population small_population() {
    const auto& p = report.params;
    return p.composition.empty() ? random_population(rng, 2, p.enumerate_up_to)
                                 : Population::from_composition(p.composition);
  }

  RunOutcome dynamics(const Population& pop, const BeliefTable& beliefs, const CostStructure& costs) {
    auto state = SimState::create(pop, costs, beliefs, NetworkState(pop.size()), rng.next_u64());
    return run(std::move(state), RunLimits::defaults_for(pop.size()));
  }

  bool failed() const { return report.verdict == Verdict::Violated; }

  void fail(const Population& pop, const BeliefTable& beliefs, const NetworkState& net, std::optional<Edge> pair,
            std::string note) {
    if (failed()) return;
    report.verdict = Verdict::Violated;
    report.counterexample = Counterexample{pop, beliefs, net, pair, std::move(note)};
  }
};

// Every converged run and every enumerated stable state must have complete memory.
void expect_full_memory(Checker& ck, const CostStructure& costs, const BeliefRange& own, const BeliefRange& other,
                        int trials, long& skipped) {
  for (int t = 0; t < trials && !ck.failed(); ++t) {
    const bool enumerate = t % 2 == 1;
    const auto pop = enumerate ? ck.small_population() : ck.population();
    const auto beliefs = random_beliefs(ck.rng, pop, own, other);
    if (enumerate) {
      for (const auto& s : enumerate_stable_states(pop, costs, beliefs)) {
        ++ck.report.checks;
        if (auto pair = first_unknown_pair(s)) {
          ck.fail(pop, beliefs, s, pair, "enumerated stable state with an unacquainted pair");
          break;
        }
      }
    } else {
      const auto out = ck.dynamics(pop, beliefs, costs);
      if (out.status != RunStatus::Converged) {
        ++skipped;
        continue;
      }
      ++ck.report.checks;
      if (auto pair = first_unknown_pair(out.final.net)) {
        ck.fail(pop, beliefs, out.final.net, pair, "converged run left a pair unacquainted");
      }
    }
  }
}

void check_p1(Checker& ck) {
  const auto& p = ck.report.params;
  const auto& c = p.costs;
  c.validate();
  require(c.c_low <= low_cost_bound(c), "c_L <= delta - delta^2");
  const auto thr = belief_thresholds(c);
  if (thr.meet_always.valid) {
    require(p.own_group.lo >= thr.meet_always.value && p.other_group.lo >= thr.meet_always.value,
            "min beliefs >= (c_H - (delta - delta^2)) / (c_H - c_L) = " + fmt(thr.meet_always.value));
  }
  long skipped = 0;
  expect_full_memory(ck, c, p.own_group, p.other_group, ck.report.trials, skipped);
  ck.report.detail = "non-converged runs skipped: " + std::to_string(skipped);
}

void check_c1(Checker& ck) {
  const auto& c = ck.report.params.costs;
  c.validate();
  require(c.c_low <= low_cost_bound(c) && low_cost_bound(c) < c.c_high, "c_L <= delta - delta^2 < c_H");
  long skipped = 0;
  std::ostringstream detail;
  const double scales[] = {1.0, 10.0, 1000.0};
  const int per_scale = std::max(1, ck.report.trials / 3);
  for (double scale : scales) {
    CostStructure scaled = c;
    scaled.c_high = c.c_high * scale;
    const auto thr = belief_thresholds(scaled).meet_always;
    ++ck.report.checks;
    if (!(thr.value <= 1.0)) {
      ck.fail(Population::from_composition({{2}}), BeliefTable::uniform(2, 1, 1.0), NetworkState(2), std::nullopt,
              "meet-always threshold exceeds 1 at c_H = " + fmt(scaled.c_high));
      break;
    }
    detail << "c_H=" << fmt(scaled.c_high) << " threshold=" << fmt(thr.value) << "; ";
    const BeliefRange range{std::max(thr.value, 0.0), 1.0};
    expect_full_memory(ck, scaled, range, range, per_scale, skipped);
    if (ck.failed()) break;
  }
  detail << "non-converged runs skipped: " << skipped;
  ck.report.detail = detail.str();
}

void check_p2(Checker& ck) {
  const auto& p = ck.report.params;
  const auto& c = p.costs;
  c.validate();
  const auto thr = belief_thresholds(c).empty_unstable;
  long unstable = 0;
  for (int t = 0; t < ck.report.trials && !ck.failed(); ++t) {
    const auto pop = ck.population();
    const auto beliefs = random_beliefs(ck.rng, pop, p.own_group, p.other_group);
    bool predicted_unstable = c.c_high <= c.delta;
    for (int i = 0; i < pop.size() && !predicted_unstable; ++i) {
      for (int j = i + 1; j < pop.size(); ++j) {
        if (std::min(beliefs(i, pop.groups[j]), beliefs(j, pop.groups[i])) >= thr.value) {
          predicted_unstable = true;
          break;
        }
      }
    }
    const NetworkState empty(pop.size());
    const auto verdict = is_pairwise_stable(empty, pop, c, beliefs);
    ++ck.report.checks;
    unstable += !verdict.stable;
    if (verdict.stable == predicted_unstable) {
      ck.fail(pop, beliefs, empty, verdict.witness ? std::optional<Edge>{Edge{verdict.witness->i, verdict.witness->j}}
                                                   : std::nullopt,
              predicted_unstable ? "threshold predicts instability but the empty network is stable"
                                 : "threshold predicts stability but the empty network is unstable");
    }
  }
  ck.report.detail = "unstable empty networks: " + std::to_string(unstable) + " of " + std::to_string(ck.report.checks);
}

void check_c2(Checker& ck) {
  const auto& c = ck.report.params.costs;
  c.validate();
  require(c.c_low <= low_cost_bound(c) && low_cost_bound(c) < c.delta && c.delta < c.c_high,
          "c_L <= delta - delta^2 < delta < c_H");
  const auto thr = belief_thresholds(c);
  const double empty = thr.empty_unstable.value;
  const double meet = thr.meet_always.value;
  long skipped = 0;
  for (int t = 0; t < ck.report.trials && !ck.failed(); ++t) {
    const int part = t % 3;
    const auto pop = ck.population();
    BeliefTable beliefs;
    if (part == 0) {
      beliefs = random_beliefs(ck.rng, pop, {0.0, empty}, {0.0, empty});
    } else if (part == 1) {
      beliefs = random_beliefs(ck.rng, pop, {0.0, 1.0}, {0.0, 1.0});
      const int i = static_cast<int>(ck.rng.below(static_cast<std::uint64_t>(pop.size())));
      int j = static_cast<int>(ck.rng.below(static_cast<std::uint64_t>(pop.size() - 1)));
      if (j >= i) ++j;
      beliefs.base(i, pop.groups[j]) = draw(ck.rng, {empty, 1.0});
      beliefs.base(j, pop.groups[i]) = draw(ck.rng, {empty, 1.0});
    } else {
      beliefs = random_beliefs(ck.rng, pop, {meet, 1.0}, {meet, 1.0});
    }
    const auto out = ck.dynamics(pop, beliefs, c);
    if (out.status != RunStatus::Converged) {
      ++skipped;
      continue;
    }
    ++ck.report.checks;
    const auto& net = out.final.net;
    if (part == 0 && net.memory_ones() != pop.size()) {
      ck.fail(pop, beliefs, net, std::nullopt, "(i) pessimistic agents discovered types");
    } else if (part == 1 && net.memory_ones() == pop.size()) {
      ck.fail(pop, beliefs, net, std::nullopt, "(ii) an optimistic pair never met");
    } else if (part == 2 && !knows_everyone(net)) {
      ck.fail(pop, beliefs, net, first_unknown_pair(net), "(iii) a pair remained unacquainted");
    }
  }
  ck.report.detail = "non-converged runs skipped: " + std::to_string(skipped);
}

// Does i (not knowing j, in another component) satisfy the refusal hypothesis towards j?
bool refusal_applies(const NetworkState& net, const Population& pop, const CostStructure& c, const BeliefTable& b,
                     const std::vector<int>& label, const std::vector<int>& sizes, AgentId i, AgentId j) {
  if (net.acquainted(i, j)) return false;
  if (label[static_cast<std::size_t>(i)] == label[static_cast<std::size_t>(j)]) return false;
  const int m = sizes[static_cast<std::size_t>(label[static_cast<std::size_t>(j)])];
  const auto thr = belief_thresholds(c, m).refuse_component;
  return thr->valid && b(i, pop.groups[j]) < thr->value;
}

void check_l1(Checker& ck) {
  const auto& p = ck.report.params;
  const auto& c = p.costs;
  c.validate();
  long covered = 0;
  for (int t = 0; t < ck.report.trials && !ck.failed(); ++t) {
    const auto pop = ck.population();
    const auto beliefs = random_beliefs(ck.rng, pop, p.own_group, p.other_group);
    const int n = pop.size();

    // a random state: links with probability 0.3, extra acquaintances with probability 0.3
    NetworkState net(n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double u = ck.rng.uniform();
        if (u < 0.3) {
          net.add_link(i, j);
        } else if (u < 0.51) {
          net.meet(i, j);
        }
      }
    }
    const auto [label, sizes] = components(net);
    for (int i = 0; i < n && !ck.failed(); ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j || !refusal_applies(net, pop, c, beliefs, label, sizes, i, j)) continue;
        ++covered;
        ++ck.report.checks;
        if (expected_incremental_utility(net, pop, c, beliefs, i, j) >= 0.0) {
          ck.fail(pop, beliefs, net, Edge{i, j}, "agent expects a non-negative gain from bridging");
          break;
        }
      }
    }

    // every addition along a run
    auto state = SimState::create(pop, c, beliefs, NetworkState(n), ck.rng.next_u64());
    const auto limits = RunLimits::defaults_for(n);
    while (!ck.failed() && state.period < limits.max_periods) {
      const NetworkState before = state.net;
      const auto outcome = step(state);
      if (outcome.stable) break;
      if (outcome.action != Action::Add) continue;
      const auto [lb, sb] = components(before);
      const auto [i, j] = outcome.pair;
      for (const auto& [a, b] : {Edge{i, j}, Edge{j, i}}) {
        if (!refusal_applies(before, pop, c, beliefs, lb, sb, a, b)) continue;
        ++covered;
        ++ck.report.checks;
        ck.fail(pop, beliefs, before, Edge{a, b}, "run linked an agent into a component below threshold");
      }
    }
  }
  ck.report.detail = "refusal situations checked: " + std::to_string(covered);
}

void check_p3i(Checker& ck) {
  const auto& p = ck.report.params;
  const auto& c = p.costs;
  c.validate();
  require(c.c_low <= low_cost_bound(c), "c_L <= delta - delta^2");
  const auto thr = belief_thresholds(c).meet_always;
  if (thr.valid) {
    require(p.own_group.lo >= thr.value && p.other_group.lo >= thr.value,
            "min beliefs >= (c_H - (delta - delta^2)) / (c_H - c_L) = " + fmt(thr.value));
  }
  std::size_t complete_total = 0;
  std::size_t incomplete_total = 0;
  for (int t = 0; t < ck.report.trials && !ck.failed(); ++t) {
    const auto pop = ck.small_population();
    const auto beliefs = random_beliefs(ck.rng, pop, p.own_group, p.other_group);
    const auto rep = check_subset_relation(pop, c, beliefs, 8, true);
    ++ck.report.checks;
    complete_total += rep.complete_stable;
    incomplete_total += rep.incomplete_stable;
    if (rep.missing_graph) {
      const auto pairs = lex_pairs(pop.size());
      ck.fail(pop, beliefs, graph_from_mask(pop.size(), pairs, *rep.missing_graph), std::nullopt,
              "complete-information stable network not stable under incomplete information");
    }
  }
  ck.report.detail = "sum |G^C_S| = " + std::to_string(complete_total) +
                     ", sum |G^IC_S| = " + std::to_string(incomplete_total);
}

void check_p3ii(Checker& ck) {
  const auto& p = ck.report.params;
  const auto& c = p.costs;
  c.validate();
  require(c.c_low <= low_cost_bound(c), "c_L <= delta - delta^2");
  const int n_max = p.composition.empty() ? p.enumerate_up_to : Population::from_composition(p.composition).size();
  require(n_max >= 3, "at least three agents");
  // a singleton must refuse the component of everyone else
  const auto thr = belief_thresholds(c, n_max - 1).refuse_component;
  require(thr->valid, "c_H > delta + (n - 2) delta^2");
  require(p.own_group.hi <= thr->value && p.other_group.hi <= thr->value,
          "beliefs < (c_H - (delta + (n - 2) delta^2)) / (c_H - c_L) = " + fmt(thr->value));

  long witnesses = 0;
  for (int t = 0; t < ck.report.trials && !ck.failed(); ++t) {
    Population pop;
    if (!p.composition.empty()) {
      pop = Population::from_composition(p.composition);
    } else {
      // every type needs a same-type partner, otherwise a singleton survives complete information too
      const int n = 3 + static_cast<int>(ck.rng.below(static_cast<std::uint64_t>(n_max - 2)));
      const bool two_types = n >= 4 && ck.rng.below(2) == 1;
      std::vector<int> groups(static_cast<std::size_t>(n));
      std::vector<int> types(static_cast<std::size_t>(n), 0);
      for (int i = 0; i < n; ++i) {
        groups[static_cast<std::size_t>(i)] = static_cast<int>(ck.rng.below(2));
        if (two_types) types[static_cast<std::size_t>(i)] = i < 2 ? 0 : (i < 4 ? 1 : static_cast<int>(ck.rng.below(2)));
      }
      pop = Population::from_labels(groups, types);
    }
    const auto beliefs = random_beliefs(ck.rng, pop, p.own_group, p.other_group);
    const auto states = enumerate_stable_states(pop, c, beliefs);
    std::set<std::uint64_t> complete;
    for (const auto& s : states) {
      if (knows_everyone(s)) complete.insert(graph_mask(s));
    }
    ++ck.report.checks;
    bool found = false;
    for (const auto& s : states) {
      bool singleton = false;
      for (int i = 0; i < s.size(); ++i) singleton |= s.degree(i) == 0;
      if (singleton && !complete.contains(graph_mask(s))) {
        found = true;
        break;
      }
    }
    if (found) {
      ++witnesses;
    } else {
      ck.fail(pop, beliefs, NetworkState(pop.size()), std::nullopt,
              "no singleton-containing network stable only under incomplete information");
    }
  }
  ck.report.detail = "trials with a witness: " + std::to_string(witnesses) +
                     " (enumeration admits every memory matrix containing the links)";
}

void check_p4(Checker& ck) {
  const auto& p = ck.report.params;
  const auto& c = p.costs;
  c.validate();
  require(!p.composition.empty(), "a fixed group composition");
  const auto pop = Population::from_composition(p.composition);
  require((pop.census.colwise().sum().array() > 0).count() == 1, "all agents share one hidden type");
  require(c.c_low <= low_cost_bound(c), "c_L <= delta - delta^2");
  const auto meet = belief_thresholds(c).meet_always;
  if (meet.valid) require(p.own_group.lo >= meet.value, "own-group beliefs >= " + fmt(meet.value));
  for (int k = 0; k < pop.group_count(); ++k) {
    const auto thr = belief_thresholds(c, pop.group_sizes[k]).refuse_component;
    require(thr->valid, "c_H > delta + (n_s - 1) delta^2 for group " + std::to_string(k + 1));
    require(p.other_group.hi <= thr->value, "other-group beliefs < " + fmt(thr->value));
  }

  const int n = pop.size();
  NetworkState complete(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) complete.add_link(i, j);
  }
  const double complete_total = total_utility(complete, pop, c);
  double best_total = complete_total;
  if (n <= 7) {
    const auto pairs = lex_pairs(n);
    for (std::uint64_t mask = 0; mask < (1ULL << pairs.size()); ++mask) {
      best_total = std::max(best_total, total_utility(graph_from_mask(n, pairs, mask), pop, c));
    }
  }

  long converged = 0;
  for (int t = 0; t < ck.report.trials && !ck.failed(); ++t) {
    const auto beliefs = random_beliefs(ck.rng, pop, p.own_group, p.other_group);
    const auto out = ck.dynamics(pop, beliefs, c);
    ++ck.report.checks;
    if (out.status != RunStatus::Converged) {
      ck.fail(pop, beliefs, out.final.net, std::nullopt, "run did not converge");
      break;
    }
    ++converged;
    const auto& net = out.final.net;
    for (int i = 0; i < n && !ck.failed(); ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (net.linked(i, j) != pop.same_group(i, j)) {
          ck.fail(pop, beliefs, net, Edge{i, j}, "converged network is not the union of group cliques");
          break;
        }
      }
    }
    if (ck.failed()) break;
    const double total = total_utility(net, pop, c);
    if (!(total < complete_total) || !(total < best_total)) {
      ck.fail(pop, beliefs, net, std::nullopt, "segregated network is not less efficient");
    }
  }
  ck.report.detail = "converged: " + std::to_string(converged) + ", segregated total utility < complete " +
                     fmt(complete_total) + ", best over all graphs " + fmt(best_total);
}

}  // namespace

Thresholds belief_thresholds(const CostStructure& costs, std::optional<int> component_size) {
  costs.validate();
  const double d = costs.delta;
  const double spread = costs.c_high - costs.c_low;
  const double near = d - d * d;
  Thresholds out;
  out.meet_always = {(costs.c_high - near) / spread, costs.c_high > near};
  out.empty_unstable = {(costs.c_high - d) / spread, costs.c_high > d};
  if (component_size) {
    if (*component_size < 1) throw std::invalid_argument("belief_thresholds: component size must be positive");
    const double reach = d + (*component_size - 1) * d * d;
    out.refuse_component = Threshold{(costs.c_high - reach) / spread, costs.c_high > reach};
  }
  return out;
}

std::uint64_t graph_mask(const NetworkState& net) {
  if (net.size() > 11) throw std::invalid_argument("graph_mask: too many agents");
  std::uint64_t mask = 0;
  int p = 0;
  for (int i = 0; i < net.size(); ++i) {
    for (int j = i + 1; j < net.size(); ++j, ++p) {
      if (net.linked(i, j)) mask |= 1ULL << p;
    }
  }
  return mask;
}

std::vector<NetworkState> enumerate_stable_states(const Population& pop, const CostStructure& costs,
                                                  const BeliefTable& beliefs, int max_n) {
  if (max_n > 8) throw std::invalid_argument("enumerate_stable_states: max_n must be <= 8");
  const int n = pop.size();
  if (n > max_n) throw std::invalid_argument("enumerate_stable_states: population exceeds max_n");
  costs.validate();
  const auto pairs = lex_pairs(n);
  std::vector<NetworkState> out;

  for (std::uint64_t mask = 0; mask < (1ULL << pairs.size()); ++mask) {
    const NetworkState net = graph_from_mask(n, pairs, mask);
    const LinkEvaluator eval(net, pop, costs, beliefs);
    bool ok = true;
    // per unlinked pair: may it stay unacquainted (bit 0) / acquainted (bit 1)?
    std::vector<std::pair<std::size_t, int>> open;
    for (std::size_t p = 0; p < pairs.size() && ok; ++p) {
      const auto [i, j] = pairs[p];
      if (net.linked(i, j)) {
        ok = !(eval.deletion_gain(i, j) > 0.0 || eval.deletion_gain(j, i) > 0.0);
        continue;
      }
      // deletion is independent of memory; the add condition depends only on M_ij
      const double bi = eval.addition_benefit(i, j);
      const double bj = eval.addition_benefit(j, i);
      const double true_cost = costs.cost(pop.same_type(i, j));
      const bool unknown_ok = !(bi - expected_cost(i, j, beliefs, net, pop, costs) >= 0.0 &&
                                bj - expected_cost(j, i, beliefs, net, pop, costs) >= 0.0);
      const bool known_ok = !(bi - true_cost >= 0.0 && bj - true_cost >= 0.0);
      const int allowed = (unknown_ok ? 1 : 0) | (known_ok ? 2 : 0);
      if (allowed == 0) ok = false;
      open.emplace_back(p, allowed);
    }
    if (!ok) continue;

    std::vector<std::size_t> free;
    NetworkState fixed = net;
    for (const auto& [p, allowed] : open) {
      if (allowed == 3) {
        free.push_back(p);
      } else if (allowed == 2) {
        fixed.meet(pairs[p].first, pairs[p].second);
      }
    }
    for (std::uint64_t combo = 0; combo < (1ULL << free.size()); ++combo) {
      NetworkState s = fixed;
      for (std::size_t f = 0; f < free.size(); ++f) {
        if ((combo >> f) & 1ULL) s.meet(pairs[free[f]].first, pairs[free[f]].second);
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

SubsetReport check_subset_relation(const Population& pop, const CostStructure& costs, const BeliefTable& beliefs,
                                   int max_n, bool require_optimism) {
  if (require_optimism) {
    costs.validate();
    require(costs.c_low <= low_cost_bound(costs), "c_L <= delta - delta^2");
    const auto thr = belief_thresholds(costs).meet_always;
    if (thr.valid) {
      for (int i = 0; i < pop.size(); ++i) {
        for (int j = 0; j < pop.size(); ++j) {
          if (i != j) {
            require(beliefs(i, pop.groups[j]) >= thr.value,
                    "every belief >= (c_H - (delta - delta^2)) / (c_H - c_L) = " + fmt(thr.value));
          }
        }
      }
    }
  }
  const auto states = enumerate_stable_states(pop, costs, beliefs, max_n);
  std::set<std::uint64_t> complete;
  std::set<std::uint64_t> incomplete;
  for (const auto& s : states) {
    const auto mask = graph_mask(s);
    incomplete.insert(mask);
    if (knows_everyone(s)) complete.insert(mask);
  }
  SubsetReport rep;
  rep.complete_stable = complete.size();
  rep.incomplete_stable = incomplete.size();
  for (auto m : complete) {
    if (!incomplete.contains(m)) {
      rep.missing_graph = m;
      rep.verdict = Verdict::Violated;
      break;
    }
  }
  for (auto m : incomplete) {
    if (!complete.contains(m)) {
      rep.extra_graph = m;
      break;
    }
  }
  rep.strict = rep.verdict == Verdict::Confirmed && rep.extra_graph.has_value();
  return rep;
}

double total_utility(const NetworkState& net, const Population& pop, const CostStructure& costs) {
  double total = 0.0;
  for (int i = 0; i < net.size(); ++i) total += actual_utility(net, pop, costs, i);
  return total;
}

std::string_view to_string(Claim claim) {
  switch (claim) {
    case Claim::P1: return "P1";
    case Claim::C1: return "C1";
    case Claim::P2: return "P2";
    case Claim::C2: return "C2";
    case Claim::L1: return "L1";
    case Claim::P3i: return "P3i";
    case Claim::P3ii: return "P3ii";
    case Claim::P4: return "P4";
  }
  return "?";
}

std::string_view to_string(Verdict verdict) { return verdict == Verdict::Confirmed ? "confirmed" : "violated"; }

std::vector<Claim> all_claims() {
  return {Claim::P1, Claim::C1, Claim::P2, Claim::C2, Claim::L1, Claim::P3i, Claim::P3ii, Claim::P4};
}

Claim parse_claim(std::string_view text) {
  for (auto c : all_claims()) {
    if (to_string(c) == text) return c;
  }
  throw std::invalid_argument("unknown claim: " + std::string(text));
}

ClaimParams preset_params(Claim claim) {
  ClaimParams p;
  p.costs = {0.7, 0.2, 1.0};
  switch (claim) {
    case Claim::P1:
      p.own_group = p.other_group = {0.99, 1.0};
      p.enumerate_up_to = 6;
      break;
    case Claim::P3i:
      p.own_group = p.other_group = {0.99, 1.0};
      break;
    case Claim::C1:
      p.enumerate_up_to = 6;
      break;
    case Claim::C2:
    case Claim::P2:
      break;
    case Claim::L1:
      p.costs.c_high = 2.0;
      break;
    case Claim::P3ii:
      p.costs.c_high = 3.0;
      p.own_group = p.other_group = {0.0, 0.29};
      break;
    case Claim::P4:
      p.costs.c_high = 2.0;
      p.composition = {{3}, {3}};
      p.own_group = {0.995, 1.0};
      p.other_group = {0.0, 0.17};
      break;
  }
  return p;
}

VerificationReport check_proposition(Claim claim, const ClaimParams& params, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("check_proposition: trials must be positive");
  if (params.max_agents < 2 || params.enumerate_up_to < 2 || params.enumerate_up_to > 8) {
    throw std::invalid_argument("check_proposition: agent bounds out of range");
  }
  Checker ck(claim, params, trials, seed);
  switch (claim) {
    case Claim::P1: check_p1(ck); break;
    case Claim::C1: check_c1(ck); break;
    case Claim::P2: check_p2(ck); break;
    case Claim::C2: check_c2(ck); break;
    case Claim::L1: check_l1(ck); break;
    case Claim::P3i: check_p3i(ck); break;
    case Claim::P3ii: check_p3ii(ck); break;
    case Claim::P4: check_p4(ck); break;
  }
  return ck.report;
}

}  // namespace netform
