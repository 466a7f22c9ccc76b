#pragma once

#include <vector>

#include "narses/bandwidth_share.hpp"

namespace narses::flow {

struct ScenarioFlow {
  FlowId id;
  HostId src;
  HostId dst;
  double size_bytes;
  sim::SimTime start;
};

// A self-contained workload against a host table: who sends what to whom,
// and when. Flow ids must be unique.
struct Scenario {
  std::vector<ScenarioFlow> flows;
};

struct Completion {
  FlowId flow;
  double transmit_end_s;
  double delivered_s;
};

struct SimulateOptions {
  // Re-derive loads and rates from scratch after every event and compare
  // against the model's incremental state. Expensive; for small runs.
  bool check_invariants = false;
};

struct InvariantReport {
  std::uint64_t rate_formula_violations = 0;
  std::uint64_t capacity_violations = 0;
  std::uint64_t load_mismatches = 0;
  std::uint64_t completion_rate_decreases = 0;
  std::uint64_t clamp_firings = 0;
  double max_byte_error_rel = 0.0;
};

struct SimulateResult {
  std::vector<Completion> completions; // ascending flow id
  sim::RunSummary summary;
  BandwidthShareModel::Counters counters;
  InvariantReport invariants;
};

// Run a scenario through the event-driven bandwidth-share model.
SimulateResult simulate(const Scenario& scenario, const HostTable& hosts,
                        const SimulateOptions& options = {});

// Reference run that settles and recomputes every active flow at every
// event instead of only the event's incident flows. If the incident-only
// reallocation in BandwidthShareModel is sound, completion times from both
// runs are bit-identical.
std::vector<Completion> global_recompute_oracle(const Scenario& scenario, const HostTable& hosts);

// Fixed-step fluid integrator, independent of the event machinery: each
// step recomputes every share and drains remaining bytes; a flow completes
// in the step its bytes reach zero, reported at step end plus latency.
// Deviation from the event-driven run shrinks with dt.
std::vector<Completion> fluid_timestep_oracle(const Scenario& scenario, const HostTable& hosts,
                                              double dt_s);

} // namespace narses::flow
