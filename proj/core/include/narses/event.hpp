#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <variant>
#include <vector>

#include "narses/sim_time.hpp"
#include "narses/types.hpp"

namespace narses::sim {

struct FlowStart {
  FlowId flow;
  HostId src;
  HostId dst;
  double size_bytes;
};

// Completion of a flow's transmission. `version` is compared against the
// flow's current version at dispatch; mismatches are stale reschedule
// leftovers and get discarded. Stale events are never removed from the
// queue eagerly.
struct FlowCompletion {
  FlowId flow;
  std::uint64_t version;
};

// Transport handoff: the listener callback for `flow` runs at this event's
// time, one one-way latency after its transmission ended.
struct Deliver {
  FlowId flow;
};

using EventPayload = std::variant<FlowStart, FlowCompletion, Deliver>;

struct Event {
  SimTime time;
  std::uint64_t seq = 0; // assigned at scheduling; breaks ties at equal time
  EventPayload payload;
};

// Min-ordered on (time, seq). Since seq is unique per run the ordering is
// total and pops are fully deterministic. Equal-time events come out in
// scheduling order.
class EventQueue {
public:
  void push(Event e) {
    heap_.push(std::move(e));
    if (heap_.size() > high_water_) high_water_ = heap_.size();
  }

  std::optional<Event> pop() {
    if (heap_.empty()) return std::nullopt;
    Event e = heap_.top();
    heap_.pop();
    return e;
  }

  bool empty() const noexcept { return heap_.empty(); }
  std::size_t size() const noexcept { return heap_.size(); }
  std::size_t high_water() const noexcept { return high_water_; }

private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  std::size_t high_water_ = 0;
};

} // namespace narses::sim
