#include "netform/dynamics.hpp"

#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "netform/utility.hpp"

namespace netform {
namespace {

struct StateKeyHash {
  std::size_t operator()(const std::vector<std::uint64_t>& key) const {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (auto w : key) {
      std::uint64_t s = h ^ w;
      h = splitmix64(s);
    }
    return static_cast<std::size_t>(h);
  }
};

std::vector<std::uint64_t> graph_key(const NetworkState& net) {
  std::vector<std::uint64_t> key;
  key.reserve(net.words_per_row() * static_cast<std::size_t>(net.size()));
  for (int i = 0; i < net.size(); ++i) {
    const auto row = net.row_bits(i);
    key.insert(key.end(), row.begin(), row.end());
  }
  return key;
}

}  // namespace

std::string_view to_string(Action action) { return action == Action::Add ? "add" : "delete"; }

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Converged: return "converged";
    case RunStatus::PresumedCycle: return "presumed_cycle";
    case RunStatus::BudgetExhausted: return "budget_exhausted";
  }
  return "unknown";
}

SimState SimState::create(Population pop, CostStructure costs, BeliefTable beliefs, NetworkState initial,
                          std::uint64_t seed) {
  costs.validate();
  if (initial.size() != pop.size()) throw std::invalid_argument("simulation: network and population sizes differ");
  if (beliefs.agents() != pop.size() || beliefs.groups() != pop.group_count()) {
    throw std::invalid_argument("simulation: belief table shape does not match the population");
  }
  initial.validate();
  SimState state{std::move(initial), std::move(pop), costs, std::move(beliefs), 0, seed, Rng(seed), {}};
  const int n = state.pop.size();
  state.scan_order.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
  return state;
}

RunLimits RunLimits::defaults_for(int n) {
  const long sq = static_cast<long>(n) * n;
  return {10 * sq, sq};
}

int apply_meeting(SimState& state, AgentId i, AgentId j) {
  if (i == j) throw std::invalid_argument("apply_meeting: an agent cannot meet itself");
  return state.net.add_link(i, j);
}

StepOutcome step(SimState& state) {
  const int n = state.net.size();
  auto& order = state.scan_order;
  order.clear();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) order.emplace_back(i, j);
  }

  StepOutcome outcome;
  {
    const LinkEvaluator eval(state.net, state.pop, state.costs, state.beliefs);
    for (std::size_t k = 0; k < order.size(); ++k) {
      const auto pick = k + static_cast<std::size_t>(state.rng.below(order.size() - k));
      std::swap(order[k], order[pick]);
      const auto [i, j] = order[k];
      if (auto w = eval.check_pair(i, j)) {
        outcome.stable = false;
        outcome.pair = {i, j};
        outcome.action = w->violation == Violation::DeletionProfitable ? Action::Delete : Action::Add;
        break;
      }
    }
  }
  if (!outcome.stable) {
    const auto [i, j] = outcome.pair;
    if (outcome.action == Action::Delete) {
      state.net.remove_link(i, j);
    } else {
      outcome.memory_gain = apply_meeting(state, i, j);
    }
  }
  ++state.period;
  return outcome;
}

RunOutcome run(SimState state, const RunLimits& limits, bool record_trace) {
  if (limits.max_periods <= 0 || limits.cycle_window <= 0) {
    throw std::invalid_argument("run: limits must be positive");
  }
  RunOutcome out;
  // graph -> last period seen; memory is constant between clears
  std::unordered_map<std::vector<std::uint64_t>, long, StateKeyHash> seen;
  seen.emplace(graph_key(state.net), state.period);

  while (true) {
    if (state.period >= limits.max_periods) {
      out.status = RunStatus::BudgetExhausted;
      break;
    }
    const auto result = step(state);
    if (result.stable) {
      out.status = RunStatus::Converged;
      break;
    }
    if (record_trace) {
      out.trace.push_back({state.period, result.pair.first, result.pair.second, result.action,
                           state.net.memory_ones()});
    }
    if (result.memory_gain > 0) seen.clear();
    auto [it, inserted] = seen.try_emplace(graph_key(state.net), state.period);
    if (!inserted) {
      if (state.period - it->second <= limits.cycle_window) {
        out.status = RunStatus::PresumedCycle;
        break;
      }
      it->second = state.period;
    }
  }
  out.final = std::move(state);
  return out;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceEvent>& trace) {
  out << "period,i,j,action,m_ones\n";
  for (const auto& e : trace) {
    out << e.period << ',' << e.i << ',' << e.j << ',' << to_string(e.action) << ',' << e.memory_ones << '\n';
  }
}

}  // namespace netform
