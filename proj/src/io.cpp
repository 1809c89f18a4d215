#include "netform/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "netform/csv.hpp"
#include "netform/utility.hpp"

namespace netform {

using nlohmann::json;

namespace {

json beta_to_json(double beta) { return std::isinf(beta) ? json("inf") : json(beta); }

double beta_from_json(const json& v) {
  if (v.is_string() && v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
  return v.get<double>();
}

std::string point_stem(const RunRecord& rec) {
  std::ostringstream os;
  os << "p" << rec.point.index << "_" << to_string(rec.regime);
  return os.str();
}

int count_components(const NetworkState& net) {
  const auto dist = all_geodesic_distances(net);
  std::vector<bool> seen(static_cast<std::size_t>(net.size()), false);
  int count = 0;
  for (int i = 0; i < net.size(); ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    ++count;
    for (int j = 0; j < net.size(); ++j) {
      if (dist(j, i) != kUnreachable) seen[static_cast<std::size_t>(j)] = true;
    }
  }
  return count;
}

}  // namespace

std::ofstream open_output(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  return out;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

json config_to_json(const ExperimentConfig& c) {
  json doc;
  doc["schema_version"] = ExperimentConfig::kSchemaVersion;
  doc["name"] = c.name;
  doc["composition"] = c.composition;
  doc["delta"] = c.delta;
  doc["c_low"] = c.c_low;
  doc["c_high"] = c.c_high;
  doc["axes"] = json::array();
  for (const auto& a : c.axes) doc["axes"].push_back({{"axis", to_string(a.axis)}, {"values", a.values}});
  doc["alpha"] = c.alpha;
  doc["betas"] = json::array();
  for (double b : c.betas) doc["betas"].push_back(beta_to_json(b));
  doc["regimes"] = json::array();
  for (auto r : c.regimes) doc["regimes"].push_back(to_string(r));
  doc["repeats"] = c.repeats;
  doc["seed_base"] = c.seed_base;
  if (c.limits) doc["limits"] = {{"max_periods", c.limits->max_periods}, {"cycle_window", c.limits->cycle_window}};
  doc["workers"] = c.workers;
  return doc;
}

ExperimentConfig config_from_json(const json& doc) {
  ExperimentConfig c;
  try {
    const int version = doc.value("schema_version", 0);
    if (version != ExperimentConfig::kSchemaVersion) {
      throw std::invalid_argument("config.schema_version: expected " +
                                  std::to_string(ExperimentConfig::kSchemaVersion));
    }
    if (doc.contains("preset")) c = preset_config(doc.at("preset").get<std::string>());
    c.name = doc.value("name", c.name);
    if (doc.contains("composition")) c.composition = doc.at("composition").get<std::vector<std::vector<int>>>();
    c.delta = doc.value("delta", c.delta);
    c.c_low = doc.value("c_low", c.c_low);
    c.c_high = doc.value("c_high", c.c_high);
    if (doc.contains("axes")) {
      c.axes.clear();
      for (const auto& a : doc.at("axes")) {
        c.axes.push_back({parse_axis(a.at("axis").get<std::string>()), a.at("values").get<std::vector<double>>()});
      }
    }
    c.alpha = doc.value("alpha", c.alpha);
    if (doc.contains("betas")) {
      c.betas.clear();
      for (const auto& b : doc.at("betas")) c.betas.push_back(beta_from_json(b));
    }
    if (doc.contains("regimes")) {
      c.regimes.clear();
      for (const auto& r : doc.at("regimes")) c.regimes.push_back(parse_regime(r.get<std::string>()));
    }
    c.repeats = doc.value("repeats", c.repeats);
    c.seed_base = doc.value("seed_base", c.seed_base);
    if (doc.contains("limits")) {
      c.limits = RunLimits{doc.at("limits").at("max_periods").get<long>(),
                           doc.at("limits").at("cycle_window").get<long>()};
    }
    c.workers = doc.value("workers", c.workers);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  const auto doc = read_json(path);
  try {
    return config_from_json(doc);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

json snapshot_json(const NetworkState& net, const Population& pop, bool include_memory) {
  json doc;
  doc["schema_version"] = 1;
  doc["n"] = net.size();
  doc["agents"] = json::array();
  int singletons = 0;
  for (int i = 0; i < net.size(); ++i) {
    const int deg = net.degree(i);
    singletons += deg == 0;
    doc["agents"].push_back({{"id", i}, {"group", pop.groups[i] + 1}, {"type", pop.types[i] + 1}, {"degree", deg}});
  }
  doc["edges"] = json::array();
  for (const auto& [i, j] : net.edges()) doc["edges"].push_back({i, j});
  doc["components"] = count_components(net);
  doc["singletons"] = singletons;
  doc["empty"] = net.link_count() == 0;
  if (include_memory) {
    json rows = json::array();
    for (int i = 0; i < net.size(); ++i) {
      json row = json::array();
      for (int j = 0; j < net.size(); ++j) row.push_back(static_cast<int>(net.memory()(i, j)));
      rows.push_back(std::move(row));
    }
    doc["memory"] = std::move(rows);
  }
  return doc;
}

std::pair<Population, NetworkState> snapshot_from_json(const json& doc) {
  try {
    std::vector<int> groups;
    std::vector<int> types;
    for (const auto& a : doc.at("agents")) {
      if (a.at("id").get<int>() != static_cast<int>(groups.size())) {
        throw std::invalid_argument("snapshot: agent ids must be 0..n-1 in order");
      }
      groups.push_back(a.at("group").get<int>() - 1);
      types.push_back(a.at("type").get<int>() - 1);
    }
    auto pop = Population::from_labels(groups, types);
    const int n = pop.size();
    NetworkState net(n);
    if (doc.contains("memory")) {
      const auto rows = doc.at("memory").get<std::vector<std::vector<int>>>();
      if (static_cast<int>(rows.size()) != n) throw std::invalid_argument("snapshot: memory has wrong size");
      BitMatrix m(n, n);
      for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n) {
          throw std::invalid_argument("snapshot: memory has wrong size");
        }
        for (int j = 0; j < n; ++j) m(i, j) = static_cast<std::uint8_t>(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      }
      net = NetworkState::with_memory(m);
    }
    for (const auto& e : doc.at("edges")) {
      const int i = e.at(0).get<int>();
      const int j = e.at(1).get<int>();
      if (net.linked(i, j)) throw std::invalid_argument("snapshot: duplicate edge");
      net.add_link(i, j);
    }
    return {std::move(pop), std::move(net)};
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("snapshot: ") + e.what());
  }
}

void write_metrics_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << "seed,regime,c_L,c_H,beta,p_inter,freeman,s_is_rational,s_is_complete,mean_degree,discovery,status,"
         "axis,repeat,periods\n";
  for (const auto& r : records) {
    const auto& m = r.metrics;
    out << r.seed << ',' << to_string(r.regime) << ',' << csv::num(r.point.costs.c_low) << ','
        << csv::num(r.point.costs.c_high) << ',' << csv::num(r.point.beta) << ',' << csv::num(m.p_inter) << ','
        << csv::num(m.freeman.value) << ',' << csv::num(m.s_is_vs_rational) << ',' << csv::num(m.s_is_vs_complete)
        << ',' << csv::num(m.mean_degree) << ',' << csv::num(m.discovery) << ',' << to_string(r.status) << ','
        << to_string(r.point.axis) << ',' << r.repeat << ',' << r.periods << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<PointSummary>& summaries) {
  out << "point,axis,c_L,c_H,beta,regime,runs,converged,presumed_cycle,budget_exhausted";
  for (const char* name : {"p_inter", "freeman", "s_is_rational", "s_is_complete", "mean_degree", "discovery",
                           "periods"}) {
    out << ',' << name << "_mean," << name << "_sd," << name << "_undefined";
  }
  out << '\n';
  for (const auto& s : summaries) {
    out << s.point.index << ',' << to_string(s.point.axis) << ',' << csv::num(s.point.costs.c_low) << ','
        << csv::num(s.point.costs.c_high) << ',' << csv::num(s.point.beta) << ',' << to_string(s.regime) << ','
        << (s.converged + s.presumed_cycles + s.budget_exhausted) << ',' << s.converged << ',' << s.presumed_cycles
        << ',' << s.budget_exhausted;
    for (const Stat* st : {&s.p_inter, &s.freeman, &s.s_is_rational, &s.s_is_complete, &s.mean_degree,
                           &s.discovery, &s.periods}) {
      if (st->count == 0) {
        out << ',' << csv::kMissing << ',' << csv::kMissing;
      } else {
        out << ',' << csv::num(st->mean) << ',' << csv::num(st->sd);
      }
      out << ',' << st->undefined;
    }
    out << '\n';
  }
}

void write_node_list(std::ostream& out, const NetworkState& net, const Population& pop) {
  out << "id,group,type,degree\n";
  for (int i = 0; i < net.size(); ++i) {
    out << i << ',' << (pop.groups[i] + 1) << ',' << (pop.types[i] + 1) << ',' << net.degree(i) << '\n';
  }
}

void write_edge_list(std::ostream& out, const NetworkState& net, const Population& pop) {
  out << "source,target,source_group,target_group,source_type,target_type,inter_group\n";
  for (const auto& [i, j] : net.edges()) {
    out << i << ',' << j << ',' << (pop.groups[i] + 1) << ',' << (pop.groups[j] + 1) << ',' << (pop.types[i] + 1)
        << ',' << (pop.types[j] + 1) << ',' << (pop.groups[i] != pop.groups[j] ? 1 : 0) << '\n';
  }
}

json report_to_json(const VerificationReport& r) {
  json doc;
  doc["claim"] = to_string(r.claim);
  const auto& p = r.params;
  doc["params"] = {{"delta", p.costs.delta},
                   {"c_low", p.costs.c_low},
                   {"c_high", p.costs.c_high},
                   {"own_group_beliefs", {p.own_group.lo, p.own_group.hi}},
                   {"other_group_beliefs", {p.other_group.lo, p.other_group.hi}},
                   {"composition", p.composition},
                   {"max_agents", p.max_agents},
                   {"enumerate_up_to", p.enumerate_up_to},
                   {"trials", r.trials}};
  doc["verdict"] = to_string(r.verdict);
  doc["seed"] = r.seed;
  doc["rng"] = kRngAlgorithm;
  doc["checks"] = r.checks;
  doc["detail"] = r.detail;
  doc["witness"] = nullptr;
  if (r.counterexample) {
    const auto& cx = *r.counterexample;
    json w = snapshot_json(cx.net, cx.pop, true);
    w["note"] = cx.note;
    if (cx.pair) w["pair"] = {cx.pair->first, cx.pair->second};
    json beliefs = json::array();
    for (int i = 0; i < cx.beliefs.agents(); ++i) {
      json row = json::array();
      for (int k = 0; k < cx.beliefs.groups(); ++k) row.push_back(cx.beliefs.base(i, k));
      beliefs.push_back(std::move(row));
    }
    w["beliefs"] = std::move(beliefs);
    doc["witness"] = std::move(w);
  }
  return doc;
}

void export_sweep(const SweepResult& result, const std::filesystem::path& dir) {
  {
    auto out = open_output(dir / "metrics.csv");
    write_metrics_csv(out, result.records);
  }
  {
    auto out = open_output(dir / "summary.csv");
    write_summary_csv(out, result.summaries);
  }
  {
    json manifest;
    manifest["config"] = config_to_json(result.config);
    manifest["config"].erase("workers");  // scheduling only; output is identical for any value
    manifest["rng"] = kRngAlgorithm;
    manifest["records"] = result.records.size();
    auto out = open_output(dir / "manifest.json");
    out << manifest.dump(2) << '\n';
  }
  for (const auto& rec : result.records) {
    if (rec.repeat != 0) continue;
    const auto stem = point_stem(rec);
    {
      json snap = snapshot_json(rec.final_net, result.population, true);
      snap["seed"] = rec.seed;
      snap["rng"] = kRngAlgorithm;
      snap["regime"] = to_string(rec.regime);
      snap["status"] = to_string(rec.status);
      snap["c_low"] = rec.point.costs.c_low;
      snap["c_high"] = rec.point.costs.c_high;
      snap["delta"] = rec.point.costs.delta;
      snap["beta"] = beta_to_json(rec.point.beta);
      auto out = open_output(dir / "snapshots" / (stem + ".json"));
      out << snap.dump() << '\n';
    }
    {
      auto out = open_output(dir / "edges" / (stem + ".edges.csv"));
      write_edge_list(out, rec.final_net, result.population);
      auto nodes = open_output(dir / "edges" / (stem + ".nodes.csv"));
      write_node_list(nodes, rec.final_net, result.population);
    }
    if (rec.regime == Regime::Biased) {
      auto out = open_output(dir / "beliefs" / ("p" + std::to_string(rec.point.index) + ".csv"));
      write_belief_csv(out, rec.beliefs, result.population);
    }
  }
}

}  // namespace netform
