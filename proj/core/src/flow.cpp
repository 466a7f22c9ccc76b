#include "narses/flow.hpp"

#include <algorithm>
#include <string>

namespace narses::flow {

void Flow::settle(sim::SimTime now, std::uint64_t* clamp_counter) {
  if (now < last_settle)
    fail(Errc::TimeRegression, "flow " + std::to_string(id) + " settled backwards in time");

  const double elapsed = now.seconds() - segment_start.seconds();
  double left = segment_remaining - rate_bps * elapsed / 8.0;
  if (left < 0.0) {
    // Completion event times are rounded doubles, so a settle can land a
    // hair past the exact drain point. Anything beyond that slack means a
    // completion event never fired.
    const double slack = 1e-6 + rate_bps * std::max(now.seconds(), 1.0) * 1e-13;
    if (left < -slack && clamp_counter) ++*clamp_counter;
    left = 0.0;
  }
  remaining = left;
  last_settle = now;
}

void Flow::change_rate(sim::SimTime now, double new_rate_bps, std::uint64_t* clamp_counter) {
  settle(now, clamp_counter);
  drained += segment_remaining - remaining;
  segment_start = now;
  segment_remaining = remaining;
  rate_bps = new_rate_bps;
  ++version;
}

double HostTable::bw(HostId h) const {
  if (h >= access_bw_bps.size())
    fail(Errc::UnknownHost, "no host " + std::to_string(h));
  return access_bw_bps[h];
}

double min_share_rate(double src_bw_bps, int src_load, double dst_bw_bps, int dst_load) {
  return std::min(src_bw_bps / src_load, dst_bw_bps / dst_load);
}

} // namespace narses::flow
