#pragma once

#include <cstdint>

#include "narses/event.hpp"

namespace narses::sim {

struct RunSummary {
  std::uint64_t events_dispatched = 0;
  std::uint64_t events_scheduled = 0;
  SimTime final_clock{};
  std::size_t queue_high_water = 0;
};

class EventHandler {
public:
  virtual ~EventHandler() = default;
  virtual void on_flow_start(const FlowStart&, SimTime now) = 0;
  virtual void on_flow_completion(const FlowCompletion&, SimTime now) = 0;
  virtual void on_deliver(const Deliver&, SimTime now) = 0;
};

// Single-threaded event loop; one Engine owns one run's clock and queue.
// The clock never moves backwards: scheduling earlier than `now` throws,
// and dispatch order is (time, seq) ascending.
class Engine {
public:
  SimTime now() const noexcept { return clock_; }

  // Enqueue a payload for dispatch at `at`. Scheduling in the past is a
  // logic bug in the caller, not a recoverable condition.
  std::uint64_t schedule(SimTime at, EventPayload payload);

  // Pop the earliest event and advance the clock to it. Empty queue leaves
  // the clock untouched.
  std::optional<Event> next_event();

  // Drain the queue, dispatching each event to `handler`. Handler errors
  // propagate; summary() then reflects the partial run.
  RunSummary run(EventHandler& handler);

  RunSummary summary() const;
  const EventQueue& queue() const noexcept { return queue_; }

private:
  EventQueue queue_;
  SimTime clock_{};
  std::uint64_t next_seq_ = 0;
  std::uint64_t dispatched_ = 0;
};

} // namespace narses::sim
