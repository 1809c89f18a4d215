#include "netform/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace netform {
namespace {

constexpr std::uint64_t kPairStream = 1;
constexpr std::uint64_t kBeliefStream = 2;

std::vector<double> grid(double from, double to, double step) {
  std::vector<double> out;
  const int count = static_cast<int>(std::lround((to - from) / step));
  for (int k = 0; k <= count; ++k) out.push_back(std::round((from + k * step) * 1e6) / 1e6);
  return out;
}

Stat stat_of(const std::vector<std::optional<double>>& values) {
  Stat s;
  double sum = 0.0;
  for (const auto& v : values) {
    if (v) {
      sum += *v;
      ++s.count;
    } else {
      ++s.undefined;
    }
  }
  if (s.count == 0) return s;
  s.mean = sum / s.count;
  if (s.count > 1) {
    double sq = 0.0;
    for (const auto& v : values) {
      if (v) sq += (*v - s.mean) * (*v - s.mean);
    }
    s.sd = std::sqrt(sq / (s.count - 1));
  }
  return s;
}

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::Biased: return "biased";
    case Regime::Rational: return "rational";
    case Regime::Complete: return "complete";
  }
  return "?";
}

std::string_view to_string(CostAxis axis) { return axis == CostAxis::CLow ? "c_low" : "c_high"; }

Regime parse_regime(std::string_view text) {
  for (auto r : {Regime::Biased, Regime::Rational, Regime::Complete}) {
    if (to_string(r) == text) return r;
  }
  throw std::invalid_argument("unknown regime: " + std::string(text));
}

CostAxis parse_axis(std::string_view text) {
  if (text == "c_low") return CostAxis::CLow;
  if (text == "c_high") return CostAxis::CHigh;
  throw std::invalid_argument("unknown cost axis: " + std::string(text));
}

void ExperimentConfig::validate() const {
  if (composition.size() < 2) throw std::invalid_argument("config.composition: needs at least two social groups");
  for (const auto& group : composition) {
    int size = 0;
    for (int c : group) {
      if (c < 0) throw std::invalid_argument("config.composition: negative type count");
      size += c;
    }
    if (size == 0) throw std::invalid_argument("config.composition: empty social group");
  }
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("config.delta: require 0 < delta < 1");
  for (const auto& a : axes) {
    if (a.values.empty()) throw std::invalid_argument("config.axes: empty value grid");
  }
  for (const auto& p : grid_points(*this)) {
    try {
      p.costs.validate();
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(std::string("config grid point: ") + e.what());
    }
  }
  if (betas.empty()) throw std::invalid_argument("config.betas: empty");
  for (double b : betas) BiasParams{alpha, b}.validate();
  if (regimes.empty()) throw std::invalid_argument("config.regimes: empty");
  for (std::size_t a = 0; a < regimes.size(); ++a) {
    for (std::size_t b = a + 1; b < regimes.size(); ++b) {
      if (regimes[a] == regimes[b]) throw std::invalid_argument("config.regimes: duplicate regime");
    }
  }
  if (repeats < 1) throw std::invalid_argument("config.repeats: must be >= 1");
  if (limits && (limits->max_periods <= 0 || limits->cycle_window <= 0)) {
    throw std::invalid_argument("config.limits: must be positive");
  }
  if (workers < 0) throw std::invalid_argument("config.workers: must be >= 0");
}

std::vector<SweepAxis> default_axes() {
  return {{CostAxis::CLow, grid(0.05, 0.95, 0.05)}, {CostAxis::CHigh, grid(0.8, 3.0, 0.2)}};
}

std::vector<std::string> preset_names() {
  return {"base", "groups4", "imbalanced-groups", "types4", "imbalanced-types", "correlated"};
}

ExperimentConfig preset_config(std::string_view name) {
  ExperimentConfig c;
  c.name = std::string(name);
  c.axes = default_axes();
  if (name == "base") {
    c.composition = {{12, 12}, {12, 12}};
  } else if (name == "groups4") {
    c.composition = {{6, 6}, {6, 6}, {6, 6}, {6, 6}};
  } else if (name == "imbalanced-groups") {
    c.composition = {{6, 6}, {18, 18}};
  } else if (name == "types4") {
    c.composition = {{6, 6, 6, 6}, {6, 6, 6, 6}};
  } else if (name == "imbalanced-types") {
    c.composition = {{18, 6}, {18, 6}};
  } else if (name == "correlated") {
    c.composition = {{18, 6}, {6, 18}};
  } else {
    throw std::invalid_argument("unknown preset: " + std::string(name));
  }
  return c;
}

std::vector<GridPoint> grid_points(const ExperimentConfig& config) {
  std::vector<GridPoint> out;
  auto add = [&](std::size_t cost_index, CostAxis axis, CostStructure costs) {
    for (double beta : config.betas) out.push_back({out.size(), cost_index, axis, costs, beta});
  };
  if (config.axes.empty()) {
    add(0, CostAxis::CLow, {config.delta, config.c_low, config.c_high});
    return out;
  }
  std::size_t cost_index = 0;
  for (const auto& a : config.axes) {
    for (double v : a.values) {
      CostStructure costs{config.delta, config.c_low, config.c_high};
      (a.axis == CostAxis::CLow ? costs.c_low : costs.c_high) = v;
      add(cost_index++, a.axis, costs);
    }
  }
  return out;
}

std::uint64_t run_seed(std::uint64_t seed_base, std::size_t cost_index, int repeat) {
  return derive_seed({seed_base, static_cast<std::uint64_t>(cost_index), static_cast<std::uint64_t>(repeat)});
}

std::vector<RunRecord> run_paired(const Population& pop, const GridPoint& point, double alpha,
                                  const std::vector<Regime>& regimes, std::uint64_t seed, int repeat,
                                  std::optional<RunLimits> limits) {
  if (regimes.empty()) throw std::invalid_argument("run_paired: no regimes");
  const auto lim = limits.value_or(RunLimits::defaults_for(pop.size()));
  const std::uint64_t pair_seed = derive_seed({seed, kPairStream});

  std::vector<RunRecord> out;
  for (auto regime : regimes) {
    BeliefTable beliefs;
    NetworkState initial(pop.size());
    switch (regime) {
      case Regime::Biased: {
        Rng belief_rng(derive_seed({seed, kBeliefStream}));
        beliefs = biased_base_beliefs(pop, {alpha, point.beta}, belief_rng);
        break;
      }
      case Regime::Rational:
        beliefs = rational_base_beliefs(pop);
        break;
      case Regime::Complete:
        beliefs = rational_base_beliefs(pop);
        beliefs.gamma.setOnes();
        initial = NetworkState::with_memory(complete_info_memory(pop));
        break;
    }
    auto outcome = run(SimState::create(pop, point.costs, beliefs, std::move(initial), pair_seed), lim);
    RunRecord rec;
    rec.point = point;
    rec.repeat = repeat;
    rec.seed = seed;
    rec.regime = regime;
    rec.status = outcome.status;
    rec.metrics = compute_metrics(outcome.final.net, pop);
    rec.periods = outcome.final.period;
    rec.final_net = std::move(outcome.final.net);
    rec.beliefs = std::move(beliefs);
    out.push_back(std::move(rec));
  }

  auto find = [&](Regime r) -> const RunRecord* {
    for (const auto& rec : out) {
      if (rec.regime == r) return &rec;
    }
    return nullptr;
  };
  for (auto& rec : out) {
    if (rec.regime != Regime::Biased) continue;
    if (const auto* base = find(Regime::Rational)) {
      rec.metrics.s_is_vs_rational = incremental_segregation(base->metrics.p_inter, rec.metrics.p_inter);
    }
    if (const auto* base = find(Regime::Complete)) {
      rec.metrics.s_is_vs_complete = incremental_segregation(base->metrics.p_inter, rec.metrics.p_inter);
    }
  }
  return out;
}

const PointSummary& SweepResult::summary(std::size_t point, Regime regime) const {
  for (const auto& s : summaries) {
    if (s.point.index == point && s.regime == regime) return s;
  }
  throw std::out_of_range("SweepResult::summary: no such point/regime");
}

std::vector<PointSummary> summarize(const std::vector<GridPoint>& points, const std::vector<Regime>& regimes,
                                    const std::vector<RunRecord>& records) {
  std::vector<PointSummary> out;
  for (const auto& point : points) {
    for (auto regime : regimes) {
      PointSummary s;
      s.point = point;
      s.regime = regime;
      std::vector<std::optional<double>> p, f, sr, sc, md, disc, per;
      for (const auto& rec : records) {
        if (rec.point.index != point.index || rec.regime != regime) continue;
        p.push_back(rec.metrics.p_inter);
        f.push_back(rec.metrics.freeman.value);
        sr.push_back(rec.metrics.s_is_vs_rational);
        sc.push_back(rec.metrics.s_is_vs_complete);
        md.push_back(rec.metrics.mean_degree);
        disc.push_back(rec.metrics.discovery);
        per.push_back(static_cast<double>(rec.periods));
        s.converged += rec.status == RunStatus::Converged;
        s.presumed_cycles += rec.status == RunStatus::PresumedCycle;
        s.budget_exhausted += rec.status == RunStatus::BudgetExhausted;
      }
      s.p_inter = stat_of(p);
      s.freeman = stat_of(f);
      s.s_is_rational = stat_of(sr);
      s.s_is_complete = stat_of(sc);
      s.mean_degree = stat_of(md);
      s.discovery = stat_of(disc);
      s.periods = stat_of(per);
      out.push_back(s);
    }
  }
  return out;
}

SweepResult sweep(const ExperimentConfig& config) {
  config.validate();
  SweepResult result;
  result.config = config;
  result.population = Population::from_composition(config.composition);
  const auto points = grid_points(config);

  const std::size_t cells = points.size() * static_cast<std::size_t>(config.repeats);
  std::vector<std::vector<RunRecord>> slots(cells);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t cell = next++; cell < cells; cell = next++) {
      const auto& point = points[cell / static_cast<std::size_t>(config.repeats)];
      const int repeat = static_cast<int>(cell % static_cast<std::size_t>(config.repeats));
      try {
        slots[cell] = run_paired(result.population, point, config.alpha, config.regimes,
                                 run_seed(config.seed_base, point.cost_index, repeat), repeat, config.limits);
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = cells;
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers =
      std::min<std::size_t>(cells, config.workers > 0 ? static_cast<std::size_t>(config.workers) : hw);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);

  result.records.reserve(cells * config.regimes.size());
  for (auto& slot : slots) {
    for (auto& rec : slot) result.records.push_back(std::move(rec));
  }
  result.summaries = summarize(points, config.regimes, result.records);
  return result;
}

}  // namespace netform
