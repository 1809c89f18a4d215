#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "netform/beliefs.hpp"
#include "netform/costs.hpp"
#include "netform/network.hpp"
#include "netform/population.hpp"
#include "netform/rng.hpp"

namespace netform {

enum class Action { Add, Delete };
enum class RunStatus { Converged, PresumedCycle, BudgetExhausted };

std::string_view to_string(Action action);
std::string_view to_string(RunStatus status);

struct TraceEvent {
  long period = 0;
  AgentId i = 0;
  AgentId j = 0;
  Action action = Action::Add;
  long memory_ones = 0;  // 1(M) after the event
};

/// Everything one run mutates. The rng drives pair selection only.
struct SimState {
  NetworkState net;
  Population pop;
  CostStructure costs;
  BeliefTable beliefs;
  long period = 0;
  std::uint64_t seed = 0;
  Rng rng{0};
  std::vector<Edge> scan_order;

  /// Validates costs and shapes, then seeds the pair-selection stream.
  static SimState create(Population pop, CostStructure costs, BeliefTable beliefs, NetworkState initial,
                         std::uint64_t seed);
};

struct StepOutcome {
  bool stable = true;
  Edge pair{-1, -1};
  Action action = Action::Add;
  int memory_gain = 0;
};

struct RunLimits {
  long max_periods = 0;
  long cycle_window = 0;

  /// 10 n^2 periods, cycle window n^2.
  static RunLimits defaults_for(int n);
};

struct RunOutcome {
  RunStatus status = RunStatus::Converged;
  SimState final;
  std::vector<TraceEvent> trace;
};

/// Link i and j and reveal their types to each other. Returns the increase of 1(M).
int apply_meeting(SimState& state, AgentId i, AgentId j);

/// One period: scan pairs in a fresh random order (lazy forward Fisher-Yates over the
/// lexicographic pair list) and commit the first improving modification. Returns
/// stable = true after a full scan without one.
StepOutcome step(SimState& state);

/// Steps until stable, a state revisit at unchanged memory inside the cycle window,
/// or the period budget runs out.
RunOutcome run(SimState state, const RunLimits& limits, bool record_trace = false);

/// period,i,j,action,m_ones
void write_trace_csv(std::ostream& out, const std::vector<TraceEvent>& trace);

}  // namespace netform
