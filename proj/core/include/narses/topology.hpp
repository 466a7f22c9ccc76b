#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "narses/error.hpp"
#include "narses/types.hpp"

namespace narses::topo {

enum class NodeKind { TransitRouter, StubRouter, EndHost };

const char* to_string(NodeKind kind);

struct Node {
  NodeId id;
  NodeKind kind;
  // First-hop capacity in bits/s. Meaningful only for end hosts; routers
  // carry 0 here and are never rate limiting.
  double access_bw_bps = 0.0;
};

struct Link {
  NodeId a;
  NodeId b;
  double bandwidth_bps;
  double latency_s;
  // Latency on an integer nanosecond grid. All path computations run in
  // this domain so alternative algorithms agree bit for bit.
  std::int64_t latency_ns;
};

struct LatencyRange {
  double min_s;
  double max_s;
};

struct BandwidthShare {
  double bw_bps;
  double probability;
};

// Parameters for the hierarchical transit-stub generator. Counts shape the
// hierarchy; the per-class ranges control link latencies and capacities.
struct TransitStubParams {
  int transit_domains = 1;
  int transit_nodes_per_domain = 6;
  int stub_domains_per_transit_node = 3;
  int stub_routers_per_stub = 3;
  int hosts_per_stub_router = 10;

  LatencyRange transit_transit_latency{0.010, 0.020};
  LatencyRange transit_stub_latency{0.005, 0.010};
  LatencyRange stub_stub_latency{0.001, 0.004};
  LatencyRange access_latency{0.0005, 0.002};

  double transit_transit_bw_bps = 10e9;
  double transit_stub_bw_bps = 2.5e9;
  double stub_stub_bw_bps = 1e9;

  // Access capacity is drawn per host from this mix; probabilities must sum
  // to 1. The default mix keeps every host well below the core classes.
  std::vector<BandwidthShare> access_bw_mix{{1.5e6, 0.5}, {10e6, 0.3}, {100e6, 0.2}};

  std::uint64_t seed = 1;

  int router_count() const;
  int host_count() const;
  int node_count() const { return router_count() + host_count(); }
  void validate() const; // InvalidParams on nonsense
};

// Undirected graph of routers and end hosts. Node ids are dense [0, n).
// Structural invariants (checked at build): connected, at most one link per
// node pair, positive latency and bandwidth everywhere, and every end host
// has exactly one link, to a stub router, whose bandwidth equals the host's
// access capacity.
class Topology {
public:
  static Topology build(std::vector<Node> nodes, std::vector<Link> links, std::uint64_t seed);

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<Link>& links() const noexcept { return links_; }
  const Node& node(NodeId id) const;
  std::uint64_t seed() const noexcept { return seed_; }

  // End-host ids in ascending order.
  const std::vector<NodeId>& end_hosts() const noexcept { return hosts_; }

  // Neighbors of `id` as (peer, index into links()).
  const std::vector<std::pair<NodeId, std::size_t>>& adjacent(NodeId id) const;

private:
  Topology() = default;

  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::vector<NodeId> hosts_;
  std::vector<std::vector<std::pair<NodeId, std::size_t>>> adj_;
  std::uint64_t seed_ = 0;
};

Topology generate_transit_stub(const TransitStubParams& params);

// The flow model assumes only first-hop links can constrain throughput.
// This holds when every router-to-router link has at least as much capacity
// as the fastest access link; the report lists every link that breaks it.
struct ValidationReport {
  bool passed = false;
  double max_access_bw_bps = 0.0;
  std::vector<Link> violations;
  std::string describe() const;
};

ValidationReport validate_no_core_bottleneck(const Topology& topo);

std::int64_t latency_to_ns(double latency_s);

} // namespace narses::topo
