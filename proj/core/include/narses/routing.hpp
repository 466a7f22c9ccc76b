#pragma once

#include <cstdint>
#include <vector>

#include "narses/topology.hpp"

namespace narses::topo {

// One-way latency from `src` to every node, by Dijkstra over link latencies.
// Distances are exact sums on the nanosecond grid, so any correct all-pairs
// algorithm must reproduce them bit for bit.
std::vector<std::int64_t> shortest_path_latency_ns(const Topology& topo, NodeId src);

std::vector<double> shortest_path_latency(const Topology& topo, NodeId src);

// All-pairs one-way latency between end hosts: one row per host, O(n) space
// per host. Symmetric with a zero diagonal.
class LatencyTable {
public:
  LatencyTable(std::vector<NodeId> hosts, std::vector<std::int64_t> cells);

  const std::vector<NodeId>& hosts() const noexcept { return hosts_; }
  std::size_t host_count() const noexcept { return hosts_.size(); }

  std::size_t index_of(NodeId host) const; // UnknownHost

  std::int64_t one_way_ns(NodeId a, NodeId b) const;
  double one_way_s(NodeId a, NodeId b) const;

  std::int64_t at_ns(std::size_t i, std::size_t j) const { return cells_[i * hosts_.size() + j]; }
  double at_s(std::size_t i, std::size_t j) const { return static_cast<double>(at_ns(i, j)) * 1e-9; }

private:
  std::vector<NodeId> hosts_;
  std::vector<std::int64_t> cells_; // row-major host_count x host_count
};

LatencyTable build_latency_table(const Topology& topo);

struct TopologyStats {
  std::size_t host_count = 0;
  double avg_rtt_s = 0.0; // mean over distinct unordered host pairs, doubled
  double max_rtt_s = 0.0;
};

// EmptyTable when the table has fewer than two hosts (no pairs to average).
TopologyStats topology_stats(const LatencyTable& table);

} // namespace narses::topo
