#include "narses/topology.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <set>
#include <sstream>

namespace narses::topo {

namespace {

// Mesh density inside a domain: every domain gets a ring, plus each
// remaining pair becomes a chord with this probability.
constexpr double kTransitChordProb = 0.30;
constexpr double kStubChordProb = 0.15;

} // namespace

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::TransitRouter: return "transit";
    case NodeKind::StubRouter: return "stub";
    case NodeKind::EndHost: return "host";
  }
  return "?";
}

std::int64_t latency_to_ns(double latency_s) {
  return std::llround(latency_s * 1e9);
}

int TransitStubParams::router_count() const {
  return transit_domains * transit_nodes_per_domain *
         (1 + stub_domains_per_transit_node * stub_routers_per_stub);
}

int TransitStubParams::host_count() const {
  return transit_domains * transit_nodes_per_domain * stub_domains_per_transit_node *
         stub_routers_per_stub * hosts_per_stub_router;
}

void TransitStubParams::validate() const {
  auto positive = [](int v, const char* name) {
    if (v < 1) fail(Errc::InvalidParams, std::string(name) + " must be >= 1");
  };
  positive(transit_domains, "transit_domains");
  positive(transit_nodes_per_domain, "transit_nodes_per_domain");
  positive(stub_domains_per_transit_node, "stub_domains_per_transit_node");
  positive(stub_routers_per_stub, "stub_routers_per_stub");
  positive(hosts_per_stub_router, "hosts_per_stub_router");

  auto check_range = [](const LatencyRange& r, const char* name) {
    if (!(r.min_s > 0.0) || !(r.max_s >= r.min_s))
      fail(Errc::InvalidParams, std::string(name) + " latency range must satisfy 0 < min <= max");
  };
  check_range(transit_transit_latency, "transit-transit");
  check_range(transit_stub_latency, "transit-stub");
  check_range(stub_stub_latency, "stub-stub");
  check_range(access_latency, "access");

  if (!(transit_transit_bw_bps > 0) || !(transit_stub_bw_bps > 0) || !(stub_stub_bw_bps > 0))
    fail(Errc::InvalidParams, "link class bandwidths must be positive");

  if (access_bw_mix.empty()) fail(Errc::InvalidParams, "access bandwidth mix is empty");
  double total = 0.0;
  for (const auto& share : access_bw_mix) {
    if (!(share.bw_bps > 0)) fail(Errc::InvalidParams, "access bandwidth must be positive");
    if (share.probability < 0) fail(Errc::InvalidParams, "mix probability must be nonnegative");
    total += share.probability;
  }
  if (std::abs(total - 1.0) > 1e-9)
    fail(Errc::InvalidParams, "access bandwidth mix probabilities must sum to 1");
}

const Node& Topology::node(NodeId id) const {
  if (id >= nodes_.size()) fail(Errc::UnknownNode, "no node " + std::to_string(id));
  return nodes_[id];
}

const std::vector<std::pair<NodeId, std::size_t>>& Topology::adjacent(NodeId id) const {
  if (id >= nodes_.size()) fail(Errc::UnknownNode, "no node " + std::to_string(id));
  return adj_[id];
}

Topology Topology::build(std::vector<Node> nodes, std::vector<Link> links, std::uint64_t seed) {
  Topology t;
  t.seed_ = seed;

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    if (n.id != i)
      fail(Errc::InvariantViolation, "node ids must be dense and ascending, got " +
                                         std::to_string(n.id) + " at position " + std::to_string(i));
    const bool is_host = n.kind == NodeKind::EndHost;
    if (is_host && !(n.access_bw_bps > 0))
      fail(Errc::InvariantViolation, "end host " + std::to_string(n.id) + " needs positive access bandwidth");
    if (!is_host && n.access_bw_bps != 0.0)
      fail(Errc::InvariantViolation, "router " + std::to_string(n.id) + " must not carry access bandwidth");
  }

  std::set<std::pair<NodeId, NodeId>> seen;
  for (Link& l : links) {
    if (l.a >= nodes.size() || l.b >= nodes.size())
      fail(Errc::InvariantViolation, "link references unknown node");
    if (l.a == l.b) fail(Errc::InvariantViolation, "self link on node " + std::to_string(l.a));
    if (!(l.bandwidth_bps > 0)) fail(Errc::InvariantViolation, "link bandwidth must be positive");
    if (!(l.latency_s > 0)) fail(Errc::InvariantViolation, "link latency must be positive");
    l.latency_ns = latency_to_ns(l.latency_s);
    if (l.latency_ns <= 0) fail(Errc::InvariantViolation, "link latency below nanosecond resolution");
    auto key = std::minmax(l.a, l.b);
    if (!seen.insert({key.first, key.second}).second)
      fail(Errc::InvariantViolation, "duplicate link " + std::to_string(l.a) + "-" + std::to_string(l.b));
  }

  t.adj_.resize(nodes.size());
  for (std::size_t i = 0; i < links.size(); ++i) {
    t.adj_[links[i].a].emplace_back(links[i].b, i);
    t.adj_[links[i].b].emplace_back(links[i].a, i);
  }

  for (const Node& n : nodes) {
    if (n.kind != NodeKind::EndHost) continue;
    const auto& nbrs = t.adj_[n.id];
    if (nbrs.size() != 1)
      fail(Errc::InvariantViolation, "end host " + std::to_string(n.id) + " has " +
                                         std::to_string(nbrs.size()) + " links, expected exactly 1");
    const Node& peer = nodes[nbrs[0].first];
    if (peer.kind != NodeKind::StubRouter)
      fail(Errc::InvariantViolation,
           "end host " + std::to_string(n.id) + " must attach to a stub router");
    if (links[nbrs[0].second].bandwidth_bps != n.access_bw_bps)
      fail(Errc::InvariantViolation, "access link bandwidth differs from host capacity on node " +
                                         std::to_string(n.id));
    t.hosts_.push_back(n.id);
  }

  if (!nodes.empty()) {
    std::vector<char> reached(nodes.size(), 0);
    std::queue<NodeId> frontier;
    frontier.push(0);
    reached[0] = 1;
    std::size_t count = 1;
    while (!frontier.empty()) {
      NodeId u = frontier.front();
      frontier.pop();
      for (const auto& [v, li] : t.adj_[u]) {
        (void)li;
        if (!reached[v]) {
          reached[v] = 1;
          ++count;
          frontier.push(v);
        }
      }
    }
    if (count != nodes.size()) fail(Errc::InvariantViolation, "topology is not connected");
  }

  t.nodes_ = std::move(nodes);
  t.links_ = std::move(links);
  return t;
}

namespace {

class Generator {
public:
  explicit Generator(const TransitStubParams& p) : p_(p), rng_(p.seed) {}

  Topology run() {
    const int T = p_.transit_domains;
    const int Nt = p_.transit_nodes_per_domain;
    const int S = p_.stub_domains_per_transit_node;
    const int R = p_.stub_routers_per_stub;
    const int H = p_.hosts_per_stub_router;

    // Node ids: transit routers first, then stub routers, then end hosts,
    // in hierarchy order throughout.
    std::vector<std::vector<NodeId>> transit(T);
    for (int d = 0; d < T; ++d)
      for (int i = 0; i < Nt; ++i) transit[d].push_back(add_node(NodeKind::TransitRouter));

    // stub domain index -> routers; parent[k] is the owning transit node
    std::vector<std::vector<NodeId>> stubs;
    std::vector<NodeId> parent;
    for (int d = 0; d < T; ++d)
      for (int i = 0; i < Nt; ++i)
        for (int s = 0; s < S; ++s) {
          std::vector<NodeId> routers;
          for (int r = 0; r < R; ++r) routers.push_back(add_node(NodeKind::StubRouter));
          parent.push_back(transit[d][i]);
          stubs.push_back(std::move(routers));
        }

    // stub_hosts[k] holds the domain's hosts in router-major order, so the
    // access wiring below can recover the router from the index alone.
    std::vector<std::vector<NodeId>> stub_hosts(stubs.size());
    for (std::size_t k = 0; k < stubs.size(); ++k)
      for (std::size_t r = 0; r < stubs[k].size(); ++r)
        for (int h = 0; h < H; ++h)
          stub_hosts[k].push_back(add_node(NodeKind::EndHost, draw_access_bw()));

    for (int d = 0; d < T; ++d)
      mesh(transit[d], p_.transit_transit_latency, p_.transit_transit_bw_bps, kTransitChordProb);

    if (T >= 2) {
      // Domain-level ring; endpoints drawn uniformly inside each domain.
      for (int d = 0; d < T; ++d) {
        int e = (d + 1) % T;
        if (T == 2 && d == 1) break; // one edge suffices for two domains
        NodeId u = transit[d][pick(transit[d].size())];
        NodeId v = transit[e][pick(transit[e].size())];
        add_link(u, v, p_.transit_transit_bw_bps, p_.transit_transit_latency);
      }
    }

    for (std::size_t k = 0; k < stubs.size(); ++k) {
      add_link(parent[k], stubs[k][0], p_.transit_stub_bw_bps, p_.transit_stub_latency);
      mesh(stubs[k], p_.stub_stub_latency, p_.stub_stub_bw_bps, kStubChordProb);
    }

    for (std::size_t k = 0; k < stubs.size(); ++k)
      for (std::size_t r = 0; r < stubs[k].size(); ++r)
        for (int h = 0; h < H; ++h) {
          NodeId host = stub_hosts[k][r * static_cast<std::size_t>(H) + h];
          add_link(stubs[k][r], host, nodes_[host].access_bw_bps, p_.access_latency);
        }

    return Topology::build(std::move(nodes_), std::move(links_), p_.seed);
  }

private:
  NodeId add_node(NodeKind kind, double access_bw = 0.0) {
    NodeId id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(Node{id, kind, access_bw});
    return id;
  }

  void add_link(NodeId a, NodeId b, double bw, const LatencyRange& range) {
    const std::int64_t lo = latency_to_ns(range.min_s);
    const std::int64_t hi = latency_to_ns(range.max_s);
    std::uniform_int_distribution<std::int64_t> dist(lo, hi);
    const std::int64_t ns = dist(rng_);
    links_.push_back(Link{a, b, bw, static_cast<double>(ns) * 1e-9, ns});
  }

  // Ring plus random chords. A pair of nodes gets one edge; singleton
  // domains get none.
  void mesh(const std::vector<NodeId>& ids, const LatencyRange& range, double bw, double chord_prob) {
    const std::size_t n = ids.size();
    if (n < 2) return;
    for (std::size_t i = 0; i + 1 < n; ++i) add_link(ids[i], ids[i + 1], bw, range);
    if (n >= 3) add_link(ids[n - 1], ids[0], bw, range);
    if (n < 4) return;
    std::bernoulli_distribution chord(chord_prob);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue; // ring closure already present
        if (chord(rng_)) add_link(ids[i], ids[j], bw, range);
      }
  }

  double draw_access_bw() {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double x = u(rng_);
    double acc = 0.0;
    for (const auto& share : p_.access_bw_mix) {
      acc += share.probability;
      if (x <= acc) return share.bw_bps;
    }
    return p_.access_bw_mix.back().bw_bps;
  }

  std::size_t pick(std::size_t n) {
    std::uniform_int_distribution<std::size_t> dist(0, n - 1);
    return dist(rng_);
  }

  const TransitStubParams& p_;
  std::mt19937_64 rng_;
  std::vector<Node> nodes_;
  std::vector<Link> links_;
};

} // namespace

Topology generate_transit_stub(const TransitStubParams& params) {
  params.validate();
  return Generator(params).run();
}

ValidationReport validate_no_core_bottleneck(const Topology& topo) {
  ValidationReport report;
  for (NodeId h : topo.end_hosts())
    report.max_access_bw_bps = std::max(report.max_access_bw_bps, topo.node(h).access_bw_bps);

  for (const Link& l : topo.links()) {
    const bool access = topo.node(l.a).kind == NodeKind::EndHost ||
                        topo.node(l.b).kind == NodeKind::EndHost;
    if (access) continue;
    if (l.bandwidth_bps < report.max_access_bw_bps) report.violations.push_back(l);
  }
  report.passed = report.violations.empty();
  return report;
}

std::string ValidationReport::describe() const {
  std::ostringstream out;
  if (passed) {
    out << "ok: every core link >= max access bandwidth (" << max_access_bw_bps << " bps)";
    return out.str();
  }
  out << violations.size() << " core link(s) below max access bandwidth (" << max_access_bw_bps
      << " bps):";
  for (const Link& l : violations)
    out << "\n  link " << l.a << "-" << l.b << " bw=" << l.bandwidth_bps;
  return out.str();
}

} // namespace narses::topo
