#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "narses/sim_time.hpp"
#include "narses/types.hpp"

namespace narses::flow {

enum class ModelKind { Naive, BandwidthShare };

enum class FlowState { Transmitting, Delivered };

// What a model reports when a flow finishes. Produced by both models and
// consumed by the transport layer, which delivers at `delivered`.
struct FlowDelivery {
  FlowId flow;
  sim::SimTime transmit_end;
  sim::SimTime delivered; // transmit_end + one-way latency
};

// One transfer in flight. Progress is tracked lazily: `remaining` is only
// brought up to date when something happens at one of the endpoints.
//
// The rate-segment anchor (segment_start, segment_remaining) records state
// as of the last rate change. Settling computes remaining from the anchor
// rather than incrementally, so settling a flow any number of times within
// one rate segment yields exactly the same bytes as settling it once. Event
// times derived from the anchor are therefore independent of how often
// bookkeeping touched the flow in between.
struct Flow {
  FlowId id = 0;
  HostId src = 0;
  HostId dst = 0;
  double size_bytes = 0.0;

  double rate_bps = 0.0;
  sim::SimTime segment_start{};
  double segment_remaining = 0.0;

  sim::SimTime last_settle{};
  double remaining = 0.0;

  double drained = 0.0; // bytes accounted across settles and delivery
  std::uint64_t version = 0;
  FlowState state = FlowState::Transmitting;

  // Advance remaining to `now` at the current rate. Negative results clamp
  // to zero; past the slack for event-time rounding that means a completion
  // event was missed, which `clamp_counter` records.
  void settle(sim::SimTime now, std::uint64_t* clamp_counter);

  // Settle, then start a new rate segment. Every rate change bumps the
  // version, invalidating completion events scheduled under the old rate.
  void change_rate(sim::SimTime now, double new_rate_bps, std::uint64_t* clamp_counter);
};

// What the model needs to know about the world: per-host first-hop capacity
// and one-way propagation latency between hosts. Hosts are dense indices.
struct HostTable {
  std::vector<double> access_bw_bps;
  std::function<double(HostId, HostId)> one_way_latency_s;

  int host_count() const noexcept { return static_cast<int>(access_bw_bps.size()); }
  double bw(HostId h) const; // UnknownHost
  double latency(HostId a, HostId b) const { return one_way_latency_s(a, b); }
};

// A flow gets an equal share of each endpoint's first-hop capacity and runs
// at the smaller of the two. Loads count flows sent or received by a host,
// combined. Deliberately not work conserving: leftover capacity at the
// other endpoint is not redistributed.
double min_share_rate(double src_bw_bps, int src_load, double dst_bw_bps, int dst_load);

// When the flow's last byte leaves the sender if the current rate holds.
// Every scheduler must derive event times through this one expression so
// that equivalent computations agree bit for bit.
inline sim::SimTime transmit_end(const Flow& f, sim::SimTime now) {
  return sim::SimTime(now.seconds() + 8.0 * f.segment_remaining / f.rate_bps);
}

} // namespace narses::flow
