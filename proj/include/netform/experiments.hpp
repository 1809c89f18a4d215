#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netform/beliefs.hpp"
#include "netform/costs.hpp"
#include "netform/dynamics.hpp"
#include "netform/metrics.hpp"
#include "netform/population.hpp"
#include "netform/rng.hpp"

namespace netform {

/// Information regimes compared on paired seeds.
enum class Regime { Biased, Rational, Complete };
enum class CostAxis { CLow, CHigh };

std::string_view to_string(Regime regime);
std::string_view to_string(CostAxis axis);
Regime parse_regime(std::string_view text);
CostAxis parse_axis(std::string_view text);

/// One swept cost; the other cost stays at the config's fixed value.
struct SweepAxis {
  CostAxis axis = CostAxis::CLow;
  std::vector<double> values;
};

struct ExperimentConfig {
  static constexpr int kSchemaVersion = 1;

  std::string name = "base";
  std::vector<std::vector<int>> composition{{12, 12}, {12, 12}};  // type counts per group
  double delta = 0.7;
  double c_low = 0.2;
  double c_high = 1.0;
  std::vector<SweepAxis> axes;  // empty: the single point (c_low, c_high)
  double alpha = 1.0;
  std::vector<double> betas{7.0};
  std::vector<Regime> regimes{Regime::Biased, Regime::Rational, Regime::Complete};
  int repeats = 30;
  std::uint64_t seed_base = 1;
  std::optional<RunLimits> limits;
  int workers = 0;  // 0: one per hardware thread

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// base, groups4, imbalanced-groups, types4, imbalanced-types, correlated.
ExperimentConfig preset_config(std::string_view name);
std::vector<std::string> preset_names();

/// c_L grid 0.05..0.95 (c_H = 1) and c_H grid 0.8..3.0 (c_L = 0.2), shared by every preset.
std::vector<SweepAxis> default_axes();

struct GridPoint {
  std::size_t index = 0;       // position in sweep order
  std::size_t cost_index = 0;  // seeds depend on this, not on beta or regime
  CostAxis axis = CostAxis::CLow;
  CostStructure costs;
  double beta = 7.0;
};

std::vector<GridPoint> grid_points(const ExperimentConfig& config);

struct RunRecord {
  GridPoint point;
  int repeat = 0;
  std::uint64_t seed = 0;
  std::string_view rng_algorithm = kRngAlgorithm;
  Regime regime = Regime::Biased;
  RunStatus status = RunStatus::Converged;
  MetricsRecord metrics;
  long periods = 0;
  NetworkState final_net;
  BeliefTable beliefs;
};

/// Seed of one (cost point, repeat) cell. Regimes and beta levels share it.
std::uint64_t run_seed(std::uint64_t seed_base, std::size_t cost_index, int repeat);

/// Runs every regime from the same seed: identical pair-selection stream, beliefs drawn
/// from a separate stream. Incremental indices are filled on the biased record.
std::vector<RunRecord> run_paired(const Population& pop, const GridPoint& point, double alpha,
                                  const std::vector<Regime>& regimes, std::uint64_t seed, int repeat,
                                  std::optional<RunLimits> limits = std::nullopt);

struct Stat {
  double mean = 0.0;
  double sd = 0.0;
  int count = 0;      // defined values
  int undefined = 0;  // excluded from mean/sd
};

struct PointSummary {
  GridPoint point;
  Regime regime = Regime::Biased;
  Stat p_inter;
  Stat freeman;
  Stat s_is_rational;
  Stat s_is_complete;
  Stat mean_degree;
  Stat discovery;
  Stat periods;
  int converged = 0;
  int presumed_cycles = 0;
  int budget_exhausted = 0;
};

struct SweepResult {
  ExperimentConfig config;
  Population population;
  std::vector<RunRecord> records;         // ordered by (point, repeat, regime)
  std::vector<PointSummary> summaries;    // ordered by (point, regime)

  const PointSummary& summary(std::size_t point, Regime regime) const;
};

/// Grid x repeats of run_paired on a bounded worker pool; output order is independent of scheduling.
SweepResult sweep(const ExperimentConfig& config);

std::vector<PointSummary> summarize(const std::vector<GridPoint>& points, const std::vector<Regime>& regimes,
                                    const std::vector<RunRecord>& records);

}  // namespace netform
