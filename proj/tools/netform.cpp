// netform: simulate, sweep, verify, metrics.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "netform/csv.hpp"
#include "netform/experiments.hpp"
#include "netform/io.hpp"
#include "netform/theory.hpp"

namespace fs = std::filesystem;
using namespace netform;

namespace {

struct Common {
  std::string config_path;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::optional<int> repeats;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "JSON experiment config")->check(CLI::ExistingFile);
  cmd->add_option("--preset", c.preset, "named composition")
      ->check(CLI::IsMember(preset_names()));
  cmd->add_option("--seed", c.seed, "seed (u64)");
  cmd->add_option("--repeats", c.repeats, "repeats per grid point")->check(CLI::PositiveNumber);
  cmd->add_option("--out", c.out, "output directory");
}

ExperimentConfig resolve_config(const Common& c) {
  ExperimentConfig config = c.config_path.empty() ? preset_config(c.preset.empty() ? "base" : c.preset)
                                                  : load_config(c.config_path);
  if (!c.config_path.empty() && !c.preset.empty()) {
    const auto p = preset_config(c.preset);
    config.composition = p.composition;
    config.name = p.name;
  }
  if (c.seed) config.seed_base = *c.seed;
  if (c.repeats) config.repeats = *c.repeats;
  config.validate();
  return config;
}

std::optional<double> parse_beta(const std::string& text) {
  if (text.empty()) return std::nullopt;
  if (text == "inf") return std::numeric_limits<double>::infinity();
  return std::stod(text);
}

int cmd_simulate(const Common& common, const std::string& regime_name, std::optional<double> c_low,
                 std::optional<double> c_high, const std::string& beta_text) {
  auto config = resolve_config(common);
  const auto pop = Population::from_composition(config.composition);
  GridPoint point;
  point.costs = {config.delta, c_low.value_or(config.c_low), c_high.value_or(config.c_high)};
  point.costs.validate();
  point.beta = parse_beta(beta_text).value_or(config.betas.front());
  BiasParams{config.alpha, point.beta}.validate();
  const Regime regime = parse_regime(regime_name);
  const std::uint64_t seed = config.seed_base;

  // Paired with the other regimes so the incremental indices are available.
  auto records = run_paired(pop, point, config.alpha, {Regime::Biased, Regime::Rational, Regime::Complete}, seed, 0,
                            config.limits);
  const RunRecord* chosen = nullptr;
  for (const auto& r : records) {
    if (r.regime == regime) chosen = &r;
  }

  // Re-run the chosen regime with tracing on; same inputs, same outcome.
  NetworkState initial(pop.size());
  if (regime == Regime::Complete) initial = NetworkState::with_memory(complete_info_memory(pop));
  const auto lim = config.limits.value_or(RunLimits::defaults_for(pop.size()));
  auto traced = run(SimState::create(pop, point.costs, chosen->beliefs, std::move(initial),
                                     derive_seed({seed, 1})),
                    lim, true);

  std::cout << "regime=" << to_string(regime) << " status=" << to_string(chosen->status)
            << " periods=" << chosen->periods << " links=" << chosen->final_net.link_count()
            << " freeman=" << csv::num(chosen->metrics.freeman.value)
            << " mean_degree=" << csv::num(chosen->metrics.mean_degree)
            << " discovery=" << csv::num(chosen->metrics.discovery) << '\n';

  if (!common.out.empty()) {
    const fs::path dir = common.out;
    {
      auto out = open_output(dir / "trace.csv");
      write_trace_csv(out, traced.trace);
    }
    {
      auto out = open_output(dir / "metrics.csv");
      write_metrics_csv(out, records);
    }
    {
      auto snap = snapshot_json(chosen->final_net, pop, true);
      snap["seed"] = seed;
      snap["rng"] = kRngAlgorithm;
      snap["regime"] = to_string(regime);
      snap["status"] = to_string(chosen->status);
      auto out = open_output(dir / "snapshot.json");
      out << snap.dump(2) << '\n';
    }
    {
      auto out = open_output(dir / "edges.csv");
      write_edge_list(out, chosen->final_net, pop);
      auto nodes = open_output(dir / "nodes.csv");
      write_node_list(nodes, chosen->final_net, pop);
      auto beliefs = open_output(dir / "beliefs.csv");
      write_belief_csv(beliefs, chosen->beliefs, pop);
    }
  }
  return 0;
}

int cmd_sweep(const Common& common, const std::vector<std::string>& beta_texts, int workers) {
  auto config = resolve_config(common);
  if (!beta_texts.empty()) {
    config.betas.clear();
    for (const auto& b : beta_texts) config.betas.push_back(*parse_beta(b));
  }
  if (workers > 0) config.workers = workers;
  config.validate();
  const auto result = sweep(config);
  if (common.out.empty()) {
    write_summary_csv(std::cout, result.summaries);
  } else {
    export_sweep(result, common.out);
    std::cerr << result.records.size() << " records written to " << common.out << '\n';
  }
  return 0;
}

int cmd_verify(const Common& common, const std::vector<std::string>& claim_names, int trials) {
  const std::uint64_t seed = common.seed.value_or(1);
  std::vector<Claim> claims;
  for (const auto& name : claim_names) claims.push_back(parse_claim(name));
  if (claims.empty()) claims = all_claims();
  bool all_confirmed = true;
  nlohmann::json reports = nlohmann::json::array();
  for (auto claim : claims) {
    const auto report = check_proposition(claim, preset_params(claim), trials, seed);
    all_confirmed = all_confirmed && report.verdict == Verdict::Confirmed;
    std::cout << to_string(claim) << ' ' << to_string(report.verdict) << " checks=" << report.checks;
    if (!report.detail.empty()) std::cout << "  " << report.detail;
    std::cout << '\n';
    reports.push_back(report_to_json(report));
  }
  if (!common.out.empty()) {
    auto out = open_output(fs::path(common.out) / "verify.json");
    out << reports.dump(2) << '\n';
  }
  return all_confirmed ? 0 : 3;
}

int cmd_metrics(const Common& common, const std::string& snapshot_path, const std::string& partition_name) {
  const auto [pop, net] = snapshot_from_json(read_json(snapshot_path));
  const Partition partition = partition_name == "type" ? Partition::ByType : Partition::ByGroup;
  const auto m = compute_metrics(net, pop, partition);
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!common.out.empty()) {
    file = open_output(fs::path(common.out) / "metrics.csv");
    os = &file;
  }
  *os << "p_inter,freeman,freeman_collapsed,mean_degree,discovery,links\n"
      << csv::num(m.p_inter) << ',' << csv::num(m.freeman.value) << ',' << (m.freeman.collapsed ? 1 : 0) << ','
      << csv::num(m.mean_degree) << ',' << csv::num(m.discovery) << ',' << net.link_count() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Network formation with hidden types and biased beliefs"};
  app.require_subcommand(1);

  Common sim_opts, sweep_opts, verify_opts, metrics_opts;

  auto* sim = app.add_subcommand("simulate", "one paired run, full trace of the chosen regime");
  add_common(sim, sim_opts);
  std::string regime = "biased";
  std::optional<double> c_low, c_high;
  std::string beta;
  sim->add_option("--regime", regime, "biased|rational|complete")
      ->check(CLI::IsMember({"biased", "rational", "complete"}));
  sim->add_option("--c-low", c_low, "same-type link cost");
  sim->add_option("--c-high", c_high, "cross-type link cost");
  sim->add_option("--beta", beta, "bias shape beta (number or inf)");

  auto* sw = app.add_subcommand("sweep", "cost-grid experiment");
  add_common(sw, sweep_opts);
  std::vector<std::string> betas;
  int workers = 0;
  sw->add_option("--beta", betas, "bias shape beta values (override config)");
  sw->add_option("--workers", workers, "worker threads (0: hardware)");

  auto* ver = app.add_subcommand("verify", "check analytic claims on their preset parameters");
  add_common(ver, verify_opts);
  std::vector<std::string> claims;
  int trials = 100;
  ver->add_option("--claim", claims, "P1 C1 P2 C2 L1 P3i P3ii P4 (default: all)");
  ver->add_option("--trials", trials, "trials per claim")->check(CLI::PositiveNumber);

  auto* met = app.add_subcommand("metrics", "recompute metrics from a snapshot");
  add_common(met, metrics_opts);
  std::string snapshot;
  std::string partition = "group";
  met->add_option("snapshot", snapshot, "snapshot JSON")->required()->check(CLI::ExistingFile);
  met->add_option("--partition", partition, "group|type")->check(CLI::IsMember({"group", "type"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) return cmd_simulate(sim_opts, regime, c_low, c_high, beta);
    if (*sw) return cmd_sweep(sweep_opts, betas, workers);
    if (*ver) return cmd_verify(verify_opts, claims, trials);
    if (*met) return cmd_metrics(metrics_opts, snapshot, partition);
  } catch (const PreconditionError& e) {
    std::cerr << "netform: precondition rejected: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "netform: invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "netform: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
