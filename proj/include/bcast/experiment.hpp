#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bcast/election.hpp"
#include "bcast/topology.hpp"

namespace bcast {

struct ExperimentConfig {
  std::uint32_t n = 32;
  BaseShape base_shape = BaseShape::string;
  std::vector<double> connectivities = {0.0, 0.1, 0.2, 0.3, 0.5, 0.8, 1.0};
  double x = 3.0;
  std::uint32_t replications = 100;
  std::uint64_t seed = 1;
  bool unit_delay = true;  // false: per-delivery uniform random in (0, bound]
  double delay_bound = 1.0;
};

ExperimentConfig experiment_config_from_json(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);

struct RunRecord {
  BaseShape base_shape = BaseShape::string;
  std::uint32_t n = 0;
  double connectivity = 0;
  std::uint32_t replication = 0;
  std::uint64_t seed = 0;
  NodeId leader = kNoNode;
  bool leader_is_max_id = false;
  SimTime init_time = 0;
  SimTime time_excl_init = 0;
  std::uint64_t transmissions = 0;
};

struct SummaryRow {
  BaseShape base_shape = BaseShape::string;
  std::uint32_t n = 0;
  double connectivity = 0;
  SimTime max_time_excl_init = 0;
  std::uint64_t max_transmissions = 0;
  double leader_is_max_id_fraction = 0;
};

// Margins are bound minus measurement; a run passes when both are >= 0.
// The message side allows the n announcement broadcasts on top of the bound.
struct BoundsReport {
  double x = 0;
  std::uint32_t n = 0;
  SimTime time_excl_init = 0;
  double time_bound = 0;
  double time_margin = 0;
  std::uint64_t post_init_transmissions = 0;
  double message_allowance = 0;
  double message_margin = 0;
  bool pass = false;
};

BoundsReport check_bounds(const ElectionResult& metrics, double x,
                          std::uint32_t n);

struct BoundsRow {
  RunRecord run;
  BoundsReport report;
};

struct ExperimentOutput {
  ExperimentConfig config;
  std::vector<RunRecord> results;
  std::vector<SummaryRow> summary;
  std::vector<BoundsRow> bounds;  // filled only for unit-delay experiments
};

ExperimentOutput run_experiment(const ExperimentConfig& cfg);

// results.csv, summary.csv, bounds.csv, plot.py under dir (created if absent)
void write_experiment_outputs(const ExperimentOutput& out, const std::string& dir);

}  // namespace bcast
