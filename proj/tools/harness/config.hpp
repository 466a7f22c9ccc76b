#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "harness/workload.hpp"
#include "narses/flow.hpp"
#include "narses/topology.hpp"

namespace narses::harness {

// Mirrors the `key = value` config file, one field per key. A run takes a
// single flow size; a sweep takes the whole list.
struct ScenarioConfig {
  flow::ModelKind model = flow::ModelKind::BandwidthShare;
  std::uint64_t seed = 0;
  std::size_t flow_count = 1;
  std::vector<double> flow_sizes;
  ArrivalKind arrival = ArrivalKind::AllAtOnce;
  double poisson_rate_per_s = 0.0;
  double poisson_horizon_s = 0.0;
  double setup_delay_s = 0.0;

  std::string topology_file; // load this file when non-empty
  topo::TransitStubParams topo_params; // generate otherwise
  bool topo_params_set = false;
  bool topo_seed_set = false;
  std::uint64_t topo_seed = 0; // defaults to `seed` when not given

  std::string output_dir; // optional; the -o flag overrides

  std::uint64_t effective_topo_seed() const { return topo_seed_set ? topo_seed : seed; }

  // InvalidParams on bad values or contradictory topology sources.
  void validate() const;
};

// ParseError with a 1-based line number on malformed input or unknown keys.
ScenarioConfig parse_config_text(const std::string& text);

// IoError when the file cannot be read.
ScenarioConfig load_config(const std::string& path);

} // namespace narses::harness
