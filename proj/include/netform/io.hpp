#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>

#include "json.hpp"
#include "netform/experiments.hpp"
#include "netform/theory.hpp"

namespace netform {

/// Raised for unreadable or unwritable files; the message carries the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Experiment configuration, schema version 1. See README for the field list.
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

/// {"schema_version", "n", "agents": [{"id","group","type","degree"}], "edges": [[i,j],...],
///  "memory": [[0/1...]...] (optional), "components", "singletons", ...}.
/// Groups and types are one-based.
nlohmann::json snapshot_json(const NetworkState& net, const Population& pop, bool include_memory = true);
std::pair<Population, NetworkState> snapshot_from_json(const nlohmann::json& doc);

/// seed,regime,c_L,c_H,beta,p_inter,freeman,s_is_rational,s_is_complete,mean_degree,discovery,status,axis,repeat,periods
void write_metrics_csv(std::ostream& out, const std::vector<RunRecord>& records);
void write_summary_csv(std::ostream& out, const std::vector<PointSummary>& summaries);
/// nodes: id,group,type,degree; edges: source,target,source_group,target_group,source_type,target_type,inter_group
void write_node_list(std::ostream& out, const NetworkState& net, const Population& pop);
void write_edge_list(std::ostream& out, const NetworkState& net, const Population& pop);

nlohmann::json report_to_json(const VerificationReport& report);

/// Writes a sweep under `dir`: metrics.csv, summary.csv, manifest.json and, for repeat 0
/// of every point and regime, snapshots/, edges/ and beliefs/ files.
void export_sweep(const SweepResult& result, const std::filesystem::path& dir);

/// Opens for writing, creating parent directories; throws IoError with the path.
std::ofstream open_output(const std::filesystem::path& path);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace netform
