#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "harness/config.hpp"
#include "harness/stats.hpp"
#include "narses/routing.hpp"
#include "narses/topology.hpp"

namespace narses::harness {

// Topology plus the derived tables a run needs. Immutable once built, so a
// single instance backs every run of a sweep.
struct PreparedTopology {
  topo::Topology topology;
  std::shared_ptr<topo::LatencyTable> table;
  std::vector<NodeId> host_ids; // dense HostId -> topology node id
  flow::HostTable hosts;
  topo::ValidationReport validation;
};

// Load or generate per the config, then gate on the bottleneck validator.
// ValidationFailed names the offending links.
PreparedTopology prepare_topology(const ScenarioConfig& cfg);

struct ScenarioResult {
  std::vector<FlowRecord> records; // ascending flow id, which is send order
  AggregateStats stats;
  RunMetrics metrics;
};

// One run: workload from (cfg, size, seed), every host listening, all sends
// pre-scheduled, then the event loop (which is all the wall clock measures).
ScenarioResult run_prepared(const PreparedTopology& prep, const ScenarioConfig& cfg,
                            double size_bytes, std::uint64_t seed);

// Convenience for single-size configs.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

struct SweepRow {
  double size_bytes;
  AggregateStats stats;
  RunMetrics metrics;
};

// One run per entry of `sizes` over a shared topology. The seed for a size
// is cfg.seed plus the index of that size's first occurrence in the list:
// distinct sizes get independent workloads, repeated sizes get identical
// rows. Runs execute sequentially; keeping runs off sibling cores keeps the
// per-size wall-clock figures comparable. `per_run`, when set, sees each
// full result as it lands (the CLI writes per-size files from it).
std::vector<SweepRow> run_sweep(
    const ScenarioConfig& cfg, const std::vector<double>& sizes,
    const std::function<void(std::size_t, const ScenarioResult&)>& per_run = {});

} // namespace narses::harness
