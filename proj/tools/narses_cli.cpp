#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "harness/config.hpp"
#include "harness/scenario.hpp"
#include "harness/stats.hpp"
#include "narses/error.hpp"
#include "narses/routing.hpp"
#include "narses/topology_io.hpp"

namespace fs = std::filesystem;
using namespace narses;

namespace {

// 0 success, 1 usage or config error, 2 validation failure
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;

struct GenArgs {
  int transit = 1;
  int transit_nodes = 6;
  int stubs = 3;
  int stub_routers = 3;
  int hosts = 10;
  std::uint64_t seed = 1;
  std::string output;
};

struct RunArgs {
  std::string config;
  std::string output;
};

struct SweepArgs {
  std::string config;
  std::string sizes;
  std::string output;
};

void ensure_parent_dir(const std::string& path) {
  fs::path p(path);
  if (p.has_parent_path() && !p.parent_path().empty())
    fs::create_directories(p.parent_path());
}

int cmd_gen_topology(const GenArgs& a) {
  topo::TransitStubParams params;
  params.transit_domains = a.transit;
  params.transit_nodes_per_domain = a.transit_nodes;
  params.stub_domains_per_transit_node = a.stubs;
  params.stub_routers_per_stub = a.stub_routers;
  params.hosts_per_stub_router = a.hosts;
  params.seed = a.seed;
  params.validate();

  const topo::Topology t = topo::generate_transit_stub(params);
  ensure_parent_dir(a.output);
  topo::save_topology(t, a.output);

  std::size_t routers = t.nodes().size() - t.end_hosts().size();
  std::printf("wrote %s: %zu nodes (%zu routers, %zu hosts), %zu links\n", a.output.c_str(),
              t.nodes().size(), routers, t.end_hosts().size(), t.links().size());

  // Pairwise RTT stats need at least two hosts; a smaller graph is still
  // a valid file, just nothing to summarize.
  if (t.end_hosts().size() >= 2) {
    const auto table = topo::build_latency_table(t);
    const auto stats = topo::topology_stats(table);
    std::printf("avg rtt %.6f s, max rtt %.6f s\n", stats.avg_rtt_s, stats.max_rtt_s);
  }

  const auto report = topo::validate_no_core_bottleneck(t);
  std::printf("%s\n", report.describe().c_str());
  return report.passed ? kExitOk : kExitValidation;
}

std::string pick_output_dir(const harness::ScenarioConfig& cfg, const std::string& flag) {
  if (!flag.empty())
    return flag;
  if (!cfg.output_dir.empty())
    return cfg.output_dir;
  fail(Errc::InvalidParams, "no output directory: pass -o or set output_dir in the config");
}

void write_run_outputs(const std::string& dir, const harness::ScenarioResult& res) {
  fs::create_directories(dir);
  harness::write_text_file(dir + "/flows.csv", harness::flow_csv(res.records));
  harness::write_text_file(dir + "/stats.json", harness::stats_json_text(res.stats, res.metrics));
}

int cmd_run(const RunArgs& a) {
  const auto cfg = harness::load_config(a.config);
  const std::string outdir = pick_output_dir(cfg, a.output);
  const auto res = harness::run_scenario(cfg);
  write_run_outputs(outdir, res);
  std::printf("%zu flows, mean duration %.6f s, p95 %.6f s, max %.6f s\n", res.stats.flow_count,
              res.stats.mean_duration_s, res.stats.p95_duration_s, res.stats.max_duration_s);
  std::printf("%" PRIu64 " events dispatched in %.3f s wall clock; wrote %s/flows.csv and stats.json\n",
              res.metrics.summary.events_dispatched, res.metrics.wall_clock_s, outdir.c_str());
  return kExitOk;
}

std::vector<double> parse_sizes_arg(const std::string& s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto comma = s.find(',', pos);
    std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (item.empty())
      fail(Errc::InvalidParams, "--sizes: empty entry");
    try {
      std::size_t used = 0;
      double v = std::stod(item, &used);
      if (used != item.size() || !(v > 0.0))
        throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      fail(Errc::InvalidParams, "--sizes: bad entry '" + item + "'");
    }
    if (comma == std::string::npos)
      break;
    pos = comma + 1;
  }
  return out;
}

int cmd_sweep(const SweepArgs& a) {
  auto cfg = harness::load_config(a.config);
  if (!a.sizes.empty())
    cfg.flow_sizes = parse_sizes_arg(a.sizes);
  const std::string outdir = pick_output_dir(cfg, a.output);
  fs::create_directories(outdir);

  std::printf("%12s %14s %14s\n", "size_bytes", "mean_s", "wall_s");
  std::string sweep_csv = "size_bytes,mean_duration_s,median_duration_s,p95_duration_s,"
                          "max_duration_s,flow_count,wall_clock_s\n";
  const auto rows = harness::run_sweep(
      cfg, cfg.flow_sizes, [&](std::size_t i, const harness::ScenarioResult& res) {
        char sub[64];
        std::snprintf(sub, sizeof sub, "/size_%02zu_%.0f", i, cfg.flow_sizes[i]);
        write_run_outputs(outdir + sub, res);
      });
  for (const auto& row : rows) {
    std::printf("%12.0f %14.6f %14.6f\n", row.size_bytes, row.stats.mean_duration_s,
                row.metrics.wall_clock_s);
    char line[256];
    std::snprintf(line, sizeof line, "%.9g,%.9f,%.9f,%.9f,%.9f,%zu,%.6f\n", row.size_bytes,
                  row.stats.mean_duration_s, row.stats.median_duration_s,
                  row.stats.p95_duration_s, row.stats.max_duration_s, row.stats.flow_count,
                  row.metrics.wall_clock_s);
    sweep_csv += line;
  }
  harness::write_text_file(outdir + "/sweep.csv", sweep_csv);
  std::printf("wrote %s/sweep.csv\n", outdir.c_str());
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"flow-level network simulator"};
  app.require_subcommand(1);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen-topology", "Generate a transit-stub topology file");
  gen->add_option("--transit", gen_args.transit, "transit domains");
  gen->add_option("--transit-nodes", gen_args.transit_nodes, "transit routers per domain");
  gen->add_option("--stubs", gen_args.stubs, "stub domains per transit router");
  gen->add_option("--stub-routers", gen_args.stub_routers, "routers per stub domain");
  gen->add_option("--hosts", gen_args.hosts, "end hosts per stub router");
  gen->add_option("--seed", gen_args.seed, "generator seed");
  gen->add_option("-o,--output", gen_args.output, "output topology file")->required();

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run one scenario from a config file");
  run->add_option("--config", run_args.config, "config file")->required();
  run->add_option("-o,--output", run_args.output, "output directory");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Run the scenario once per flow size");
  sweep->add_option("--config", sweep_args.config, "config file")->required();
  sweep->add_option("--sizes", sweep_args.sizes, "comma-separated sizes, overrides flow_size");
  sweep->add_option("-o,--output", sweep_args.output, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed())
      return cmd_gen_topology(gen_args);
    if (run->parsed())
      return cmd_run(run_args);
    return cmd_sweep(sweep_args);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.code() == Errc::ValidationFailed ? kExitValidation : kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
}
