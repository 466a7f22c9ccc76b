#include "narses/engine.hpp"

#include <string>

namespace narses::sim {

std::uint64_t Engine::schedule(SimTime at, EventPayload payload) {
  if (at < clock_)
    fail(Errc::SchedulingInPast,
         "event scheduled at " + std::to_string(at.seconds()) + "s, clock already at " +
             std::to_string(clock_.seconds()) + "s");
  const std::uint64_t seq = next_seq_++;
  queue_.push(Event{at, seq, std::move(payload)});
  return seq;
}

std::optional<Event> Engine::next_event() {
  auto e = queue_.pop();
  if (e) clock_ = e->time;
  return e;
}

RunSummary Engine::run(EventHandler& handler) {
  while (auto e = next_event()) {
    ++dispatched_;
    const SimTime now = e->time;
    std::visit(
        [&](const auto& p) {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, FlowStart>)
            handler.on_flow_start(p, now);
          else if constexpr (std::is_same_v<P, FlowCompletion>)
            handler.on_flow_completion(p, now);
          else
            handler.on_deliver(p, now);
        },
        e->payload);
  }
  return summary();
}

RunSummary Engine::summary() const {
  return RunSummary{dispatched_, next_seq_, clock_, queue_.high_water()};
}

} // namespace narses::sim
