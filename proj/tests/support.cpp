#include "support.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <limits>
#include <set>
#include <sstream>

#include <sys/wait.h>

#include "narses/error.hpp"

namespace narses::testsup {

flow::HostTable uniform_hosts(std::vector<double> bw_bps, double latency_s) {
  flow::HostTable t;
  t.access_bw_bps = std::move(bw_bps);
  t.one_way_latency_s = [latency_s](HostId a, HostId b) { return a == b ? 0.0 : latency_s; };
  return t;
}

flow::HostTable matrix_hosts(std::vector<double> bw_bps, std::vector<std::vector<double>> lat_s) {
  flow::HostTable t;
  t.access_bw_bps = std::move(bw_bps);
  t.one_way_latency_s = [m = std::move(lat_s)](HostId a, HostId b) { return m[a][b]; };
  return t;
}

FourFlowCase four_flow_case() {
  FourFlowCase c;
  c.hosts = uniform_hosts({0.4e6, 1e6, 3e6, 0.8e6, 0.8e6}, 0.0);
  c.scenario.flows = {
      {0, 0, 1, 10000.0, sim::SimTime(0.0)}, // a: X -> Y
      {1, 2, 1, 50000.0, sim::SimTime(0.0)}, // b: Z -> Y
      {2, 2, 3, 32000.0, sim::SimTime(0.0)}, // c: Z -> U
      {3, 2, 4, 40000.0, sim::SimTime(0.0)}, // d: Z -> V
  };
  return c;
}

ScenarioCase random_case(std::mt19937_64& rng, int max_hosts, int max_flows) {
  static const double kBwClasses[] = {1e6, 2e6, 4e6, 8e6, 2e7, 1e8};

  ScenarioCase c;
  std::uniform_int_distribution<int> host_count(2, max_hosts);
  const int n = host_count(rng);

  std::vector<double> bw(static_cast<std::size_t>(n));
  std::uniform_int_distribution<std::size_t> bw_pick(0, std::size(kBwClasses) - 1);
  for (auto& b : bw) b = kBwClasses[bw_pick(rng)];

  std::uniform_real_distribution<double> lat(0.001, 0.08);
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m[i][j] = m[j][i] = lat(rng);
  c.hosts = matrix_hosts(std::move(bw), std::move(m));

  std::uniform_int_distribution<int> flow_count(1, max_flows);
  const int flows = flow_count(rng);
  std::uniform_int_distribution<int> size(5000, 200000);
  std::uniform_int_distribution<HostId> src(0, static_cast<HostId>(n - 1));
  std::uniform_int_distribution<HostId> off(1, static_cast<HostId>(n - 1));
  const bool all_at_once = rng() % 2 == 0;
  std::exponential_distribution<double> gap(20.0);

  double t = 0.0;
  for (int i = 0; i < flows; ++i) {
    flow::ScenarioFlow f;
    f.id = static_cast<FlowId>(i);
    f.src = src(rng);
    f.dst = (f.src + off(rng)) % static_cast<HostId>(n);
    f.size_bytes = static_cast<double>(size(rng));
    if (!all_at_once) t += gap(rng);
    f.start = sim::SimTime(t);
    c.scenario.flows.push_back(f);
  }
  // Decorrelate flow id from scheduling order.
  std::shuffle(c.scenario.flows.begin(), c.scenario.flows.end(), rng);
  return c;
}

std::vector<std::vector<std::int64_t>> floyd_warshall_ns(const topo::Topology& topo) {
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  const std::size_t n = topo.nodes().size();
  std::vector<std::vector<std::int64_t>> d(n, std::vector<std::int64_t>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& l : topo.links()) {
    d[l.a][l.b] = std::min(d[l.a][l.b], l.latency_ns);
    d[l.b][l.a] = std::min(d[l.b][l.a], l.latency_ns);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i][k] == kInf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (d[k][j] == kInf) continue;
        const std::int64_t via = d[i][k] + d[k][j];
        if (via < d[i][j]) d[i][j] = via;
      }
    }
  return d;
}

topo::Topology random_valid_topology(std::mt19937_64& rng, int max_routers, int max_hosts) {
  static const double kAccess[] = {1.5e6, 1e7, 1e8};

  std::uniform_int_distribution<int> rcount(2, max_routers);
  std::uniform_int_distribution<int> hcount(2, max_hosts);
  const int routers = rcount(rng);
  const int hosts = hcount(rng);

  std::vector<topo::Node> nodes;
  for (int r = 0; r < routers; ++r)
    nodes.push_back({static_cast<NodeId>(r), topo::NodeKind::StubRouter, 0.0});
  std::uniform_int_distribution<std::size_t> apick(0, std::size(kAccess) - 1);
  for (int h = 0; h < hosts; ++h)
    nodes.push_back({static_cast<NodeId>(routers + h), topo::NodeKind::EndHost, kAccess[apick(rng)]});

  std::uniform_int_distribution<std::int64_t> core_lat(1'000'000, 50'000'000); // 1..50 ms
  std::uniform_int_distribution<std::int64_t> edge_lat(500'000, 2'000'000);    // 0.5..2 ms

  std::vector<topo::Link> links;
  std::set<std::pair<NodeId, NodeId>> used;
  auto add = [&](NodeId a, NodeId b, double bw, std::int64_t ns) {
    links.push_back({a, b, bw, static_cast<double>(ns) * 1e-9, ns});
    used.insert(std::minmax(a, b));
  };

  // Spanning tree keeps it connected; chords make the paths interesting.
  for (int r = 1; r < routers; ++r) {
    std::uniform_int_distribution<NodeId> prev(0, static_cast<NodeId>(r - 1));
    add(static_cast<NodeId>(r), prev(rng), 1e9, core_lat(rng));
  }
  std::uniform_int_distribution<int> extra(0, routers);
  std::uniform_int_distribution<NodeId> anyr(0, static_cast<NodeId>(routers - 1));
  for (int e = extra(rng); e > 0; --e) {
    NodeId a = anyr(rng), b = anyr(rng);
    if (a == b || used.count(std::minmax(a, b))) continue;
    add(a, b, 1e9, core_lat(rng));
  }
  for (int h = 0; h < hosts; ++h) {
    const auto id = static_cast<NodeId>(routers + h);
    add(id, anyr(rng), nodes[id].access_bw_bps, edge_lat(rng));
  }
  return topo::Topology::build(std::move(nodes), std::move(links), rng());
}

int run_cli(const std::string& cli_path, const std::string& args, std::string* output) {
  const std::string cmd = cli_path + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return -1;
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  if (output) *output = std::move(out);
  if (status == -1) return -1;
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string drop_nondeterministic_lines(const std::string& stats_json) {
  std::istringstream in(stats_json);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.find("wall_clock_s") != std::string::npos) continue;
    if (line.find("peak_rss_bytes") != std::string::npos) continue;
    out += line;
    out += '\n';
  }
  return out;
}

std::string make_temp_dir(const std::string& hint) {
  std::string tmpl = "/tmp/" + hint + "XXXXXX";
  std::vector<char> buf(tmpl.begin(), tmpl.end());
  buf.push_back('\0');
  if (!mkdtemp(buf.data())) fail(Errc::IoError, "mkdtemp failed for " + tmpl);
  return std::string(buf.data());
}

} // namespace narses::testsup
