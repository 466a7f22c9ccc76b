#pragma once

#include <map>
#include <optional>
#include <vector>

#include "narses/engine.hpp"
#include "narses/flow.hpp"

namespace narses::flow {

// Event-driven bandwidth sharing with reallocation limited to the flows
// touching the event's two endpoints. A flow start or completion changes
// loads only at its own src and dst, and a flow's rate depends only on the
// loads at its endpoints, so every other flow's allocation is provably
// unchanged and is not visited.
class BandwidthShareModel {
public:
  struct Counters {
    std::uint64_t rate_recomputations = 0;
    std::uint64_t rate_changes = 0;
    std::uint64_t stale_discarded = 0;
    std::uint64_t delivered = 0;
    std::uint64_t clamp_firings = 0;
    std::uint64_t completion_rate_decreases = 0; // must stay 0
    double max_byte_error_rel = 0.0;
  };

  BandwidthShareModel(const HostTable& hosts, sim::Engine& engine);

  // Register a new flow at `now`, reallocate both endpoints, and schedule
  // completion events for every flow whose rate changed. Completion events
  // fire when the last byte leaves the sender; propagation latency is added
  // once, to the delivery timestamp.
  FlowId start_flow(FlowId id, HostId src, HostId dst, double size_bytes, sim::SimTime now);

  // Handle a completion event. Returns the delivery if the event is live,
  // nothing if it is a stale leftover from a reschedule. Unknown ids mean
  // the engine fed us someone else's event.
  std::optional<FlowDelivery> on_completion(FlowId id, std::uint64_t version, sim::SimTime now);

  const Flow& flow(FlowId id) const;
  bool has_flow(FlowId id) const { return flows_.count(id) != 0; }
  const std::map<FlowId, Flow>& flows() const noexcept { return flows_; }
  const std::vector<int>& loads() const noexcept { return loads_; }
  const Counters& counters() const noexcept { return counters_; }
  const HostTable& hosts() const noexcept { return *hosts_; }

private:
  void reallocate(HostId a, HostId b, sim::SimTime now, Flow* started, bool completion);
  void schedule_completion(const Flow& f, sim::SimTime now);
  void detach(HostId h, FlowId id);

  const HostTable* hosts_;
  sim::Engine* engine_;
  std::map<FlowId, Flow> flows_;
  std::vector<int> loads_;
  std::vector<std::vector<FlowId>> by_host_;
  std::vector<FlowId> scratch_;
  Counters counters_;
};

} // namespace narses::flow
