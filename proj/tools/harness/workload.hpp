#pragma once

#include <cstdint>
#include <vector>

#include "narses/types.hpp"

namespace narses::harness {

enum class ArrivalKind { AllAtOnce, Poisson };

struct WorkloadItem {
  double start_s;
  HostId src;
  HostId dst;
  double size_bytes;
};

struct WorkloadParams {
  ArrivalKind arrival = ArrivalKind::AllAtOnce;
  std::size_t flow_count = 1;      // AllAtOnce: exact count, all at t=0
  double poisson_rate_per_s = 0.0; // Poisson: arrivals until the horizon
  double poisson_horizon_s = 0.0;
  double size_bytes = 0.0; // every flow in a run carries the same size
  std::uint64_t seed = 0;
};

// Endpoints are uniform over ordered distinct host pairs; the same pair may
// recur across flows. Poisson inter-arrival gaps are exponential, so the
// realized flow count is itself random. TooFewHosts below 2 hosts.
std::vector<WorkloadItem> random_workload(std::size_t host_count, const WorkloadParams& p);

} // namespace narses::harness
