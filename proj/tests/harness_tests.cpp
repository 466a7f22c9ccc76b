#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "harness/config.hpp"
#include "harness/scenario.hpp"
#include "harness/stats.hpp"
#include "harness/workload.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace narses;
using namespace narses::harness;

TEST_CASE("all-at-once workloads are exact and reproducible") {
  WorkloadParams p;
  p.flow_count = 50;
  p.size_bytes = 1000.0;
  p.seed = 11;

  auto w = random_workload(10, p);
  REQUIRE(w.size() == 50);
  for (const auto& it : w) {
    CHECK(it.start_s == 0.0);
    CHECK(it.size_bytes == 1000.0);
    CHECK(it.src < 10);
    CHECK(it.dst < 10);
    CHECK(it.src != it.dst);
  }

  auto w2 = random_workload(10, p);
  bool same = w.size() == w2.size();
  for (std::size_t i = 0; same && i < w.size(); ++i)
    same = w[i].src == w2[i].src && w[i].dst == w2[i].dst;
  CHECK(same);

  p.seed = 12;
  auto w3 = random_workload(10, p);
  bool differs = false;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i].src != w3[i].src || w[i].dst != w3[i].dst) differs = true;
  CHECK(differs);
}

TEST_CASE("workload parameter validation") {
  WorkloadParams p;
  p.size_bytes = 1000.0;
  CHECK_THROWS_AS(random_workload(1, p), Error);

  p.size_bytes = 0.0;
  CHECK_THROWS_AS(random_workload(5, p), Error);

  p.size_bytes = 1000.0;
  p.flow_count = 0;
  CHECK_THROWS_AS(random_workload(5, p), Error);

  p.flow_count = 1;
  p.arrival = ArrivalKind::Poisson;
  p.poisson_rate_per_s = 0.0;
  p.poisson_horizon_s = 1.0;
  CHECK_THROWS_AS(random_workload(5, p), Error);
  p.poisson_rate_per_s = 10.0;
  p.poisson_horizon_s = 0.0;
  CHECK_THROWS_AS(random_workload(5, p), Error);
}

TEST_CASE("poisson arrivals hit the configured rate on average") {
  WorkloadParams p;
  p.arrival = ArrivalKind::Poisson;
  p.poisson_rate_per_s = 100.0;
  p.poisson_horizon_s = 0.1; // 10 expected arrivals
  p.size_bytes = 1000.0;

  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    p.seed = seed;
    auto w = random_workload(6, p);
    total += static_cast<double>(w.size());
    double prev = 0.0;
    for (const auto& it : w) {
      if (!(it.start_s > 0.0) || !(it.start_s < p.poisson_horizon_s) || it.start_s < prev) {
        FAIL_CHECK("arrival out of order or outside (0, horizon) at seed " << seed);
        return;
      }
      prev = it.start_s;
    }
  }
  const double mean = total / 1000.0;
  CHECK(mean > 9.7);
  CHECK(mean < 10.3);
}

TEST_CASE("aggregate statistics, checked against hand values") {
  auto rec = [](FlowId id, double dur) {
    return FlowRecord{id, 0, 1, 100.0, 0.0, dur};
  };

  auto s = aggregate({rec(0, 1.0), rec(1, 2.0), rec(2, 3.0)});
  CHECK(s.mean_duration_s == 2.0);
  CHECK(s.median_duration_s == 2.0);
  CHECK(s.p95_duration_s == 3.0); // nearest rank: ceil(0.95 * 3) = 3
  CHECK(s.max_duration_s == 3.0);
  CHECK(s.flow_count == 3);

  s = aggregate({rec(0, 4.0), rec(1, 1.0), rec(2, 3.0), rec(3, 2.0)});
  CHECK(s.median_duration_s == 2.5);
  CHECK(s.p95_duration_s == 4.0);

  s = aggregate({rec(0, 0.125)});
  CHECK(s.mean_duration_s == 0.125);
  CHECK(s.median_duration_s == 0.125);
  CHECK(s.p95_duration_s == 0.125);
  CHECK(s.max_duration_s == 0.125);

  // 1..20: the 95th percentile by nearest rank is the 19th value.
  std::vector<FlowRecord> twenty;
  for (int i = 1; i <= 20; ++i) twenty.push_back(rec(static_cast<FlowId>(i), double(i)));
  CHECK(aggregate(twenty).p95_duration_s == 19.0);

  CHECK_THROWS_AS(aggregate({}), Error);
  CHECK_THROWS_AS(aggregate({rec(0, 0.0)}), Error);
  CHECK_THROWS_AS(aggregate({FlowRecord{0, 0, 1, 100.0, 2.0, 1.0}}), Error);
}

TEST_CASE("aggregate agrees with an independent recomputation at scale") {
  std::vector<FlowRecord> recs;
  recs.reserve(10000);
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const double dur = 0.001 + static_cast<double>((i * 2654435761u) % 100000) * 1e-5;
    recs.push_back(FlowRecord{i, 0, 1, 100.0, 0.0, dur});
  }
  auto s = aggregate(recs);

  std::vector<double> d;
  double sum = 0.0;
  for (const auto& r : recs) {
    d.push_back(r.delivered_s - r.start_s);
    sum += r.delivered_s - r.start_s;
  }
  std::sort(d.begin(), d.end());
  CHECK(s.mean_duration_s == doctest::Approx(sum / 10000.0).epsilon(1e-12));
  CHECK(s.median_duration_s == 0.5 * (d[4999] + d[5000]));
  CHECK(s.p95_duration_s == d[9499]); // ceil(0.95 * 10000) = 9500th value
  CHECK(s.max_duration_s == d.back());
  CHECK(s.flow_count == 10000);
}

TEST_CASE("flow records render to a fixed csv layout") {
  std::vector<FlowRecord> recs = {
      {0, 1, 2, 50000.0, 0.0, 1.5},
      {1, 3, 0, 1536.5, 0.25, 0.375},
  };
  const std::string csv = flow_csv(recs);
  CHECK(csv ==
        "flow_id,src,dst,size_bytes,start_s,delivered_s,duration_s\n"
        "0,1,2,50000,0.000000000,1.500000000,1.500000000\n"
        "1,3,0,1536.5,0.250000000,0.375000000,0.125000000\n");
  CHECK(flow_csv({}) == "flow_id,src,dst,size_bytes,start_s,delivered_s,duration_s\n");
}

TEST_CASE("stats json carries the documented fields") {
  AggregateStats agg;
  agg.mean_duration_s = 1.5;
  agg.median_duration_s = 1.25;
  agg.p95_duration_s = 2.5;
  agg.max_duration_s = 3.0;
  agg.flow_count = 7;
  RunMetrics m;
  m.summary.events_dispatched = 20;
  m.summary.events_scheduled = 21;
  m.summary.queue_high_water = 9;
  m.counters.rate_recomputations = 55;
  m.counters.stale_discarded = 3;
  m.wall_clock_s = 0.125;

  const std::string text = stats_json_text(agg, m);
  const auto j = nlohmann::json::parse(text);
  CHECK(j.size() == 12);
  CHECK(j["mean_duration_s"] == 1.5);
  CHECK(j["median_duration_s"] == 1.25);
  CHECK(j["p95_duration_s"] == 2.5);
  CHECK(j["max_duration_s"] == 3.0);
  CHECK(j["flow_count"] == 7);
  CHECK(j["events_dispatched"] == 20);
  CHECK(j["events_scheduled"] == 21);
  CHECK(j["queue_high_water"] == 9);
  CHECK(j["rate_recomputations"] == 55);
  CHECK(j["stale_events_discarded"] == 3);
  CHECK(j["wall_clock_s"] == 0.125);
  CHECK(j["peak_rss_bytes"].get<std::uint64_t>() > 0);
  CHECK(text.back() == '\n');

  // The nondeterministic fields sit on their own lines so they can be
  // filtered out for byte comparisons.
  const std::string filtered = testsup::drop_nondeterministic_lines(text);
  CHECK(filtered.find("wall_clock_s") == std::string::npos);
  CHECK(filtered.find("peak_rss_bytes") == std::string::npos);
  CHECK(filtered.find("mean_duration_s") != std::string::npos);
}

TEST_CASE("config files parse into the documented fields") {
  const std::string text =
      "# full scenario\n"
      "model = bandwidth-share\n"
      "seed = 42\n"
      "flow_count = 250\n"
      "flow_size = 10000, 50000,200000  # bytes\n"
      "arrival = poisson\n"
      "poisson_rate = 50\n"
      "poisson_horizon = 2.5\n"
      "setup_delay = 0.01\n"
      "topo_transit = 1\n"
      "topo_transit_nodes = 2\n"
      "topo_stubs = 3\n"
      "topo_stub_routers = 2\n"
      "topo_hosts = 4\n"
      "topo_seed = 7\n"
      "output_dir = /tmp/somewhere\n";
  auto cfg = parse_config_text(text);
  CHECK(cfg.model == flow::ModelKind::BandwidthShare);
  CHECK(cfg.seed == 42);
  CHECK(cfg.flow_count == 250);
  CHECK(cfg.flow_sizes == std::vector<double>{10000.0, 50000.0, 200000.0});
  CHECK(cfg.arrival == ArrivalKind::Poisson);
  CHECK(cfg.poisson_rate_per_s == 50.0);
  CHECK(cfg.poisson_horizon_s == 2.5);
  CHECK(cfg.setup_delay_s == 0.01);
  CHECK(cfg.topo_params.transit_domains == 1);
  CHECK(cfg.topo_params.transit_nodes_per_domain == 2);
  CHECK(cfg.topo_params.stub_domains_per_transit_node == 3);
  CHECK(cfg.topo_params.stub_routers_per_stub == 2);
  CHECK(cfg.topo_params.hosts_per_stub_router == 4);
  CHECK(cfg.topo_params_set);
  CHECK(cfg.topo_seed_set);
  CHECK(cfg.effective_topo_seed() == 7);
  CHECK(cfg.output_dir == "/tmp/somewhere");
  CHECK_NOTHROW(cfg.validate());

  auto defaults = parse_config_text("");
  CHECK(defaults.model == flow::ModelKind::BandwidthShare);
  CHECK(defaults.seed == 0);
  CHECK(defaults.flow_count == 1);
  CHECK(defaults.arrival == ArrivalKind::AllAtOnce);
  CHECK(!defaults.topo_params_set);
  CHECK_THROWS_AS(defaults.validate(), Error); // flow_size is required

  auto minimal = parse_config_text("flow_size = 1000\r\nseed = 9\r\n");
  CHECK(minimal.flow_sizes == std::vector<double>{1000.0});
  CHECK(minimal.effective_topo_seed() == 9); // topo seed falls back to seed
  CHECK_NOTHROW(minimal.validate());
}

TEST_CASE("config errors carry the offending line number") {
  auto expect_error = [](const std::string& text, const std::string& needle) {
    try {
      auto cfg = parse_config_text(text);
      cfg.validate();
      FAIL_CHECK("no error for:\n" << text);
    } catch (const Error& e) {
      if (std::string(e.what()).find(needle) == std::string::npos)
        FAIL_CHECK("expected '" << needle << "' in: " << e.what());
    }
  };

  expect_error("flow_count = 3\nbogus = 1\n", "config line 2");
  expect_error("bogus = 1\n", "unknown key 'bogus'");
  expect_error("seed = -4\n", "non-negative");
  expect_error("seed = 12abc\n", "not an integer");
  expect_error("model = tcp\n", "model must be");
  expect_error("arrival = sometimes\n", "arrival must be");
  expect_error("flow_count 3\n", "expected 'key = value'");
  expect_error("= 5\n", "missing key");
  expect_error("seed =\n", "missing value");
  expect_error("poisson_rate = fast\n", "not a finite number");
  expect_error("flow_size = 10,,20\n", "empty entry");
  expect_error("flow_size = 1000\ntopology_file = t.topo\ntopo_transit = 2\n",
               "mutually exclusive");
  expect_error("flow_size = -5\n", "must be positive");
  expect_error("flow_size = 1000\narrival = poisson\n", "poisson_rate");
  expect_error("flow_size = 1000\nflow_count = 0\n", "flow_count");
  expect_error("flow_size = 1000\nsetup_delay = -1\n", "setup_delay");

  CHECK_THROWS_AS(load_config("/nonexistent/config.cfg"), Error);
}

namespace {

ScenarioConfig small_cfg() {
  ScenarioConfig cfg;
  cfg.seed = 3;
  cfg.flow_count = 200;
  cfg.flow_sizes = {50000.0};
  cfg.topo_params.transit_domains = 1;
  cfg.topo_params.transit_nodes_per_domain = 2;
  cfg.topo_params.stub_domains_per_transit_node = 2;
  cfg.topo_params.stub_routers_per_stub = 2;
  cfg.topo_params.hosts_per_stub_router = 5;
  cfg.topo_params_set = true;
  return cfg;
}

} // namespace

TEST_CASE("prepared topologies expose hosts in table order") {
  auto prep = prepare_topology(small_cfg());
  CHECK(prep.validation.passed);
  CHECK(prep.topology.nodes().size() == 50);
  REQUIRE(prep.host_ids.size() == 40);
  CHECK(prep.hosts.host_count() == 40);
  CHECK(std::is_sorted(prep.host_ids.begin(), prep.host_ids.end()));
  for (std::size_t i = 0; i < prep.host_ids.size(); ++i)
    CHECK(prep.hosts.access_bw_bps[i] == prep.topology.node(prep.host_ids[i]).access_bw_bps);
  CHECK(prep.hosts.latency(0, 1) > 0.0);
  CHECK(prep.hosts.latency(0, 1) == prep.hosts.latency(1, 0));
  CHECK(prep.hosts.latency(0, 1) == prep.table->at_s(0, 1));
}

TEST_CASE("a topology with a slow core link fails the gate") {
  const std::string dir = testsup::make_temp_dir("narsestopo");
  const std::string path = dir + "/bad.topo";
  write_text_file(path,
                  "narses-topo v1 seed=0\n"
                  "node 0 stub\n"
                  "node 1 stub\n"
                  "node 2 host bw=1000000\n"
                  "node 3 host bw=1000000\n"
                  "link 0 1 bw=500000 lat=0.001\n"
                  "link 0 2 bw=1000000 lat=0.001\n"
                  "link 1 3 bw=1000000 lat=0.001\n");
  ScenarioConfig cfg;
  cfg.flow_sizes = {1000.0};
  cfg.topology_file = path;
  try {
    prepare_topology(cfg);
    FAIL_CHECK("bottlenecked topology passed the gate");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ValidationFailed);
  }
}

TEST_CASE("scenario runs are deterministic and conserve flows") {
  auto cfg = small_cfg();
  auto r1 = run_scenario(cfg);
  auto r2 = run_scenario(cfg);

  REQUIRE(r1.records.size() == 200);
  for (std::size_t i = 0; i < r1.records.size(); ++i) {
    CHECK(r1.records[i].flow_id == static_cast<FlowId>(i));
    CHECK(r1.records[i].delivered_s > r1.records[i].start_s);
  }
  CHECK(flow_csv(r1.records) == flow_csv(r2.records));
  CHECK(testsup::drop_nondeterministic_lines(stats_json_text(r1.stats, r1.metrics)) ==
        testsup::drop_nondeterministic_lines(stats_json_text(r2.stats, r2.metrics)));
  CHECK(r1.metrics.summary.events_dispatched == r2.metrics.summary.events_dispatched);
  CHECK(r1.metrics.counters.rate_recomputations == r2.metrics.counters.rate_recomputations);
  CHECK(r1.metrics.wall_clock_s > 0.0);
  CHECK(r1.metrics.counters.completion_rate_decreases == 0);
  CHECK(r1.metrics.counters.clamp_firings == 0);
}

TEST_CASE("naive and bandwidth-share agree on a lone flow") {
  auto cfg = small_cfg();
  cfg.flow_count = 1;
  auto shared = run_scenario(cfg);
  cfg.model = flow::ModelKind::Naive;
  auto naive = run_scenario(cfg);
  REQUIRE(shared.records.size() == 1);
  REQUIRE(naive.records.size() == 1);
  CHECK(shared.records[0].delivered_s == naive.records[0].delivered_s);
}

TEST_CASE("a single run insists on a single size") {
  auto cfg = small_cfg();
  cfg.flow_sizes = {1000.0, 2000.0};
  CHECK_THROWS_AS(run_scenario(cfg), Error);
}

TEST_CASE("sweeps reuse seeds for repeated sizes and scale with size") {
  auto cfg = small_cfg();
  cfg.flow_count = 800;

  CHECK_THROWS_AS(run_sweep(cfg, {1000.0}), Error);

  std::vector<std::size_t> seen;
  auto rows = run_sweep(cfg, {50000.0, 50000.0},
                        [&](std::size_t i, const ScenarioResult& res) {
                          seen.push_back(i);
                          CHECK(res.records.size() == 800);
                        });
  REQUIRE(rows.size() == 2);
  CHECK(seen == std::vector<std::size_t>{0, 1});
  // Same size, same derived seed: the rows must be identical.
  CHECK(rows[0].stats.mean_duration_s == rows[1].stats.mean_duration_s);
  CHECK(rows[0].stats.median_duration_s == rows[1].stats.median_duration_s);
  CHECK(rows[0].stats.p95_duration_s == rows[1].stats.p95_duration_s);
  CHECK(rows[0].stats.max_duration_s == rows[1].stats.max_duration_s);
  CHECK(rows[0].metrics.summary.events_dispatched == rows[1].metrics.summary.events_dispatched);

  // Completion times grow with flow size; the gaps here are wide enough
  // that independent workload draws cannot reorder the means.
  auto ladder = run_sweep(cfg, {20000.0, 100000.0, 200000.0});
  REQUIRE(ladder.size() == 3);
  CHECK(ladder[0].stats.mean_duration_s < ladder[1].stats.mean_duration_s);
  CHECK(ladder[1].stats.mean_duration_s < ladder[2].stats.mean_duration_s);
}
