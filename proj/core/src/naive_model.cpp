#include "narses/naive_model.hpp"

#include <algorithm>
#include <string>

namespace narses::flow {

double naive_duration(const HostTable& hosts, HostId src, HostId dst, double size_bytes) {
  if (!(size_bytes > 0.0)) fail(Errc::ZeroSize, "flow size must be positive");
  const double bottleneck = std::min(hosts.bw(src), hosts.bw(dst));
  return hosts.latency(src, dst) + 8.0 * size_bytes / bottleneck;
}

FlowId NaiveModel::start_flow(FlowId id, HostId src, HostId dst, double size_bytes,
                              sim::SimTime now) {
  if (src == dst) fail(Errc::InvalidParams, "flow endpoints must be distinct");
  const sim::SimTime done(now.seconds() + naive_duration(*hosts_, src, dst, size_bytes));
  if (!pending_.emplace(id, done).second)
    fail(Errc::InvariantViolation, "duplicate flow id " + std::to_string(id));
  engine_->schedule(done, sim::FlowCompletion{id, 0});
  return id;
}

std::optional<FlowDelivery> NaiveModel::on_completion(FlowId id, std::uint64_t version,
                                                      sim::SimTime now) {
  (void)version; // never rescheduled, so never stale
  auto it = pending_.find(id);
  if (it == pending_.end())
    fail(Errc::UnknownFlow, "completion event for unknown flow " + std::to_string(id));
  pending_.erase(it);
  // The single event already includes propagation latency.
  return FlowDelivery{id, now, now};
}

} // namespace narses::flow
