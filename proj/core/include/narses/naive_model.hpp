#pragma once

#include <map>
#include <optional>

#include "narses/engine.hpp"
#include "narses/flow.hpp"

namespace narses::flow {

// Duration a transfer would take on an otherwise idle network: one-way
// latency plus the time to push the bytes through the slower endpoint.
// Pure; cross traffic never enters into it.
double naive_duration(const HostTable& hosts, HostId src, HostId dst, double size_bytes);

// Baseline model: every flow takes naive_duration, full stop. One
// completion event per flow and no shared state between flows.
class NaiveModel {
public:
  NaiveModel(const HostTable& hosts, sim::Engine& engine) : hosts_(&hosts), engine_(&engine) {}

  FlowId start_flow(FlowId id, HostId src, HostId dst, double size_bytes, sim::SimTime now);
  std::optional<FlowDelivery> on_completion(FlowId id, std::uint64_t version, sim::SimTime now);

private:
  const HostTable* hosts_;
  sim::Engine* engine_;
  std::map<FlowId, sim::SimTime> pending_;
};

} // namespace narses::flow
