#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "narses/flow.hpp"
#include "narses/oracles.hpp"
#include "narses/topology.hpp"

namespace narses::testsup {

// Hosts with the given capacities and one constant latency between any two
// distinct hosts (zero to itself).
flow::HostTable uniform_hosts(std::vector<double> bw_bps, double latency_s);

// Hosts with an explicit symmetric latency matrix.
flow::HostTable matrix_hosts(std::vector<double> bw_bps, std::vector<std::vector<double>> lat_s);

// The four-flow contention scenario: a crosses b at the receiver, b crosses
// c and d at the sender, c and d touch neither of a's endpoints. Hosts are
// X=0, Y=1, Z=2, U=3, V=4; flows a=0 (X->Y, 10 kB), b=1 (Z->Y, 50 kB),
// c=2 (Z->U, 32 kB), d=3 (Z->V, 40 kB), all starting at t=0, zero latency.
struct FourFlowCase {
  flow::HostTable hosts;
  flow::Scenario scenario;
};
FourFlowCase four_flow_case();

// Random workload against random hosts, the shape the oracle comparisons
// run on: a few hosts, a few dozen flows, arrivals either simultaneous or
// a Poisson process. Flow ids are a permutation of 0..n-1 so id order and
// schedule order disagree.
struct ScenarioCase {
  flow::HostTable hosts;
  flow::Scenario scenario;
};
ScenarioCase random_case(std::mt19937_64& rng, int max_hosts = 10, int max_flows = 30);

// All-pairs shortest path latencies, the O(n^3) way. Deliberately shares no
// code with the routing module.
std::vector<std::vector<std::int64_t>> floyd_warshall_ns(const topo::Topology& topo);

// A random connected router graph with degree-1 end hosts hanging off it.
// Satisfies every structural invariant of Topology::build.
topo::Topology random_valid_topology(std::mt19937_64& rng, int max_routers = 30,
                                     int max_hosts = 20);

// Subprocess helper: runs `cli_path` with `args`, captures stdout+stderr
// into `output`, returns the exit code (-1 if the process failed to run).
int run_cli(const std::string& cli_path, const std::string& args, std::string* output);

std::string read_file(const std::string& path);

// Drops the lines carrying fields documented as nondeterministic
// (wall_clock_s, peak_rss_bytes) so the rest can be compared byte for byte.
std::string drop_nondeterministic_lines(const std::string& stats_json);

// Fresh directory under the system temp root.
std::string make_temp_dir(const std::string& hint);

} // namespace narses::testsup
