#include "harness/workload.hpp"

#include <cmath>
#include <random>

#include "narses/error.hpp"

namespace narses::harness {

std::vector<WorkloadItem> random_workload(std::size_t host_count, const WorkloadParams& p) {
  if (host_count < 2)
    fail(Errc::TooFewHosts, "need at least two hosts to draw flow endpoints");
  if (!(p.size_bytes > 0.0) || !std::isfinite(p.size_bytes))
    fail(Errc::InvalidParams, "flow size must be positive and finite");

  std::mt19937_64 rng(p.seed);
  auto n = static_cast<std::uint32_t>(host_count);
  std::uniform_int_distribution<std::uint32_t> pick_src(0, n - 1);
  std::uniform_int_distribution<std::uint32_t> pick_off(1, n - 1);
  auto draw_pair = [&](WorkloadItem& it) {
    it.src = pick_src(rng);
    it.dst = (it.src + pick_off(rng)) % n; // uniform over hosts != src
  };

  std::vector<WorkloadItem> out;
  if (p.arrival == ArrivalKind::AllAtOnce) {
    if (p.flow_count < 1)
      fail(Errc::InvalidParams, "flow count must be at least 1");
    out.resize(p.flow_count);
    for (auto& it : out) {
      it.start_s = 0.0;
      it.size_bytes = p.size_bytes;
      draw_pair(it);
    }
    return out;
  }

  if (!(p.poisson_rate_per_s > 0.0) || !std::isfinite(p.poisson_rate_per_s))
    fail(Errc::InvalidParams, "poisson rate must be positive");
  if (!(p.poisson_horizon_s > 0.0) || !std::isfinite(p.poisson_horizon_s))
    fail(Errc::InvalidParams, "poisson horizon must be positive");
  std::exponential_distribution<double> gap(p.poisson_rate_per_s);
  double t = gap(rng);
  while (t < p.poisson_horizon_s) {
    WorkloadItem it;
    it.start_s = t;
    it.size_bytes = p.size_bytes;
    draw_pair(it);
    out.push_back(it);
    t += gap(rng);
  }
  return out;
}

} // namespace narses::harness
