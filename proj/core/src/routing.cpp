#include "narses/routing.hpp"

#include <limits>
#include <queue>
#include <string>

namespace narses::topo {

namespace {
constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max() / 4;
}

std::vector<std::int64_t> shortest_path_latency_ns(const Topology& topo, NodeId src) {
  if (src >= topo.nodes().size()) fail(Errc::UnknownNode, "no node " + std::to_string(src));

  std::vector<std::int64_t> dist(topo.nodes().size(), kUnreachable);
  dist[src] = 0;

  using Item = std::pair<std::int64_t, NodeId>; // (distance, node)
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  heap.push({0, src});

  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d != dist[u]) continue; // superseded entry
    for (const auto& [v, li] : topo.adjacent(u)) {
      const std::int64_t nd = d + topo.links()[li].latency_ns;
      if (nd < dist[v]) {
        dist[v] = nd;
        heap.push({nd, v});
      }
    }
  }
  return dist;
}

std::vector<double> shortest_path_latency(const Topology& topo, NodeId src) {
  auto ns = shortest_path_latency_ns(topo, src);
  std::vector<double> out(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i)
    out[i] = ns[i] >= kUnreachable ? std::numeric_limits<double>::infinity()
                                   : static_cast<double>(ns[i]) * 1e-9;
  return out;
}

LatencyTable::LatencyTable(std::vector<NodeId> hosts, std::vector<std::int64_t> cells)
    : hosts_(std::move(hosts)), cells_(std::move(cells)) {
  if (cells_.size() != hosts_.size() * hosts_.size())
    fail(Errc::InvariantViolation, "latency table shape mismatch");
  for (std::size_t i = 0; i < hosts_.size(); ++i) {
    if (at_ns(i, i) != 0) fail(Errc::InvariantViolation, "latency table diagonal must be zero");
    for (std::size_t j = i + 1; j < hosts_.size(); ++j)
      if (at_ns(i, j) != at_ns(j, i))
        fail(Errc::InvariantViolation, "latency table must be symmetric");
  }
}

std::size_t LatencyTable::index_of(NodeId host) const {
  auto it = std::lower_bound(hosts_.begin(), hosts_.end(), host);
  if (it == hosts_.end() || *it != host)
    fail(Errc::UnknownHost, "node " + std::to_string(host) + " is not an end host");
  return static_cast<std::size_t>(it - hosts_.begin());
}

std::int64_t LatencyTable::one_way_ns(NodeId a, NodeId b) const {
  return at_ns(index_of(a), index_of(b));
}

double LatencyTable::one_way_s(NodeId a, NodeId b) const {
  return static_cast<double>(one_way_ns(a, b)) * 1e-9;
}

LatencyTable build_latency_table(const Topology& topo) {
  const auto& hosts = topo.end_hosts();
  std::vector<std::int64_t> cells(hosts.size() * hosts.size(), 0);
  for (std::size_t i = 0; i < hosts.size(); ++i) {
    auto dist = shortest_path_latency_ns(topo, hosts[i]);
    for (std::size_t j = 0; j < hosts.size(); ++j) cells[i * hosts.size() + j] = dist[hosts[j]];
  }
  return LatencyTable(std::vector<NodeId>(hosts), std::move(cells));
}

TopologyStats topology_stats(const LatencyTable& table) {
  const std::size_t n = table.host_count();
  if (n < 2) fail(Errc::EmptyTable, "need at least two end hosts for pairwise stats");

  TopologyStats stats;
  stats.host_count = n;
  double sum = 0.0;
  std::int64_t max_ns = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      sum += table.at_s(i, j);
      max_ns = std::max(max_ns, table.at_ns(i, j));
      ++pairs;
    }
  stats.avg_rtt_s = 2.0 * (sum / static_cast<double>(pairs));
  stats.max_rtt_s = 2.0 * (static_cast<double>(max_ns) * 1e-9);
  return stats;
}

} // namespace narses::topo
