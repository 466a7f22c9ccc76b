#include "harness/scenario.hpp"

#include <algorithm>
#include <chrono>

#include "harness/workload.hpp"
#include "narses/error.hpp"
#include "narses/topology_io.hpp"
#include "narses/transport.hpp"

namespace narses::harness {

PreparedTopology prepare_topology(const ScenarioConfig& cfg) {
  topo::Topology topology = [&]() -> topo::Topology {
    if (!cfg.topology_file.empty())
      return topo::load_topology(cfg.topology_file);
    auto params = cfg.topo_params;
    params.seed = cfg.effective_topo_seed();
    return topo::generate_transit_stub(params);
  }();

  auto validation = topo::validate_no_core_bottleneck(topology);
  if (!validation.passed)
    fail(Errc::ValidationFailed, validation.describe());

  auto table = std::make_shared<topo::LatencyTable>(topo::build_latency_table(topology));
  std::vector<NodeId> host_ids = topology.end_hosts();
  flow::HostTable hosts;
  hosts.access_bw_bps.reserve(host_ids.size());
  for (NodeId id : host_ids)
    hosts.access_bw_bps.push_back(topology.node(id).access_bw_bps);
  // Dense host indices coincide with latency-table rows: both come from
  // end_hosts() in ascending id order.
  hosts.one_way_latency_s = [table](HostId a, HostId b) { return table->at_s(a, b); };

  return PreparedTopology{std::move(topology), std::move(table), std::move(host_ids),
                          std::move(hosts), std::move(validation)};
}

ScenarioResult run_prepared(const PreparedTopology& prep, const ScenarioConfig& cfg,
                            double size_bytes, std::uint64_t seed) {
  WorkloadParams wp;
  wp.arrival = cfg.arrival;
  wp.flow_count = cfg.flow_count;
  wp.poisson_rate_per_s = cfg.poisson_rate_per_s;
  wp.poisson_horizon_s = cfg.poisson_horizon_s;
  wp.size_bytes = size_bytes;
  wp.seed = seed;
  const auto items = random_workload(prep.hosts.access_bw_bps.size(), wp);

  transport::Simulation sim(prep.hosts, cfg.model, cfg.setup_delay_s);
  const auto host_count = static_cast<HostId>(prep.hosts.host_count());
  for (HostId h = 0; h < host_count; ++h)
    sim.listen(h, 1, [](const transport::DeliveryRecord&) {});
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& it = items[i];
    sim.send_at({it.size_bytes, i, it.src, it.dst, 1}, sim::SimTime(it.start_s));
  }

  const auto t0 = std::chrono::steady_clock::now();
  const sim::RunSummary summary = sim.run();
  const auto t1 = std::chrono::steady_clock::now();

  if (sim.deliveries().size() != items.size())
    fail(Errc::InvariantViolation,
         "sent " + std::to_string(items.size()) + " flows but delivered " +
             std::to_string(sim.deliveries().size()));

  ScenarioResult res;
  res.records.reserve(items.size());
  for (const auto& rec : sim.deliveries()) {
    const auto& it = items[static_cast<std::size_t>(rec.flow)];
    res.records.push_back(FlowRecord{rec.flow, it.src, it.dst, rec.size_bytes,
                                     rec.start.seconds(), rec.delivered.seconds()});
  }
  std::sort(res.records.begin(), res.records.end(),
            [](const FlowRecord& a, const FlowRecord& b) { return a.flow_id < b.flow_id; });
  res.stats = aggregate(res.records);
  res.metrics.summary = summary;
  res.metrics.counters = sim.model_counters();
  res.metrics.wall_clock_s = std::chrono::duration<double>(t1 - t0).count();
  return res;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  if (cfg.flow_sizes.size() != 1)
    fail(Errc::InvalidParams, "a single run takes exactly one flow_size; sweep handles lists");
  const PreparedTopology prep = prepare_topology(cfg);
  return run_prepared(prep, cfg, cfg.flow_sizes[0], cfg.seed);
}

std::vector<SweepRow> run_sweep(
    const ScenarioConfig& cfg, const std::vector<double>& sizes,
    const std::function<void(std::size_t, const ScenarioResult&)>& per_run) {
  cfg.validate();
  if (sizes.size() < 2)
    fail(Errc::InvalidParams, "a sweep needs at least two sizes");
  const PreparedTopology prep = prepare_topology(cfg);
  std::vector<SweepRow> rows;
  rows.reserve(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const auto first = static_cast<std::size_t>(
        std::find(sizes.begin(), sizes.begin() + static_cast<std::ptrdiff_t>(i), sizes[i]) -
        sizes.begin());
    auto res = run_prepared(prep, cfg, sizes[i], cfg.seed + first);
    if (per_run)
      per_run(i, res);
    rows.push_back(SweepRow{sizes[i], res.stats, res.metrics});
  }
  return rows;
}

} // namespace narses::harness
