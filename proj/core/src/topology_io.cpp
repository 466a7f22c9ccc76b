#include "narses/topology_io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace narses::topo {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void parse_fail(int line, const std::string& what) {
  fail(Errc::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

double parse_kv(const std::string& tok, const char* key, int line) {
  const std::string prefix = std::string(key) + "=";
  if (tok.rfind(prefix, 0) != 0) parse_fail(line, "expected " + prefix + "<value>, got '" + tok + "'");
  const char* begin = tok.c_str() + prefix.size();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') parse_fail(line, "bad number in '" + tok + "'");
  return v;
}

NodeId parse_id(const std::string& tok, int line) {
  char* end = nullptr;
  unsigned long v = std::strtoul(tok.c_str(), &end, 10);
  if (end == tok.c_str() || *end != '\0') parse_fail(line, "bad node id '" + tok + "'");
  return static_cast<NodeId>(v);
}

} // namespace

void save_topology(const Topology& topo, std::ostream& out) {
  out << "narses-topo v1 seed=" << topo.seed() << "\n";
  for (const Node& n : topo.nodes()) {
    out << "node " << n.id << " " << to_string(n.kind);
    if (n.kind == NodeKind::EndHost) out << " bw=" << fmt_double(n.access_bw_bps);
    out << "\n";
  }

  std::vector<Link> links = topo.links();
  for (Link& l : links)
    if (l.a > l.b) std::swap(l.a, l.b);
  std::sort(links.begin(), links.end(),
            [](const Link& x, const Link& y) { return std::pair(x.a, x.b) < std::pair(y.a, y.b); });

  for (const Link& l : links)
    out << "link " << l.a << " " << l.b << " bw=" << fmt_double(l.bandwidth_bps)
        << " lat=" << fmt_double(l.latency_s) << "\n";
}

void save_topology(const Topology& topo, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::IoError, "cannot write " + path);
  save_topology(topo, out);
  if (!out.good()) fail(Errc::IoError, "write failed for " + path);
}

Topology load_topology(std::istream& in) {
  std::string line;
  int lineno = 0;

  if (!std::getline(in, line)) parse_fail(1, "empty input, expected header");
  ++lineno;
  std::uint64_t seed = 0;
  {
    auto toks = tokens_of(line);
    if (toks.size() != 3 || toks[0] != "narses-topo" || toks[1] != "v1")
      parse_fail(lineno, "expected 'narses-topo v1 seed=<int>'");
    const std::string prefix = "seed=";
    if (toks[2].rfind(prefix, 0) != 0) parse_fail(lineno, "missing seed field");
    char* end = nullptr;
    seed = std::strtoull(toks[2].c_str() + prefix.size(), &end, 10);
    if (*end != '\0') parse_fail(lineno, "bad seed value");
  }

  std::vector<Node> nodes;
  std::vector<Link> links;

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokens_of(line);
    if (toks.empty()) continue;

    if (toks[0] == "node") {
      if (toks.size() != 3 && toks.size() != 4) parse_fail(lineno, "node line needs 3 or 4 fields");
      Node n;
      n.id = parse_id(toks[1], lineno);
      if (toks[2] == "transit")
        n.kind = NodeKind::TransitRouter;
      else if (toks[2] == "stub")
        n.kind = NodeKind::StubRouter;
      else if (toks[2] == "host")
        n.kind = NodeKind::EndHost;
      else
        parse_fail(lineno, "unknown node kind '" + toks[2] + "'");
      if (n.kind == NodeKind::EndHost) {
        if (toks.size() != 4) parse_fail(lineno, "host line missing bw=<bits/s>");
        n.access_bw_bps = parse_kv(toks[3], "bw", lineno);
      } else if (toks.size() == 4) {
        parse_fail(lineno, "router line must not carry bw");
      }
      nodes.push_back(n);
    } else if (toks[0] == "link") {
      if (toks.size() != 5) parse_fail(lineno, "link line needs 5 fields");
      Link l{};
      l.a = parse_id(toks[1], lineno);
      l.b = parse_id(toks[2], lineno);
      l.bandwidth_bps = parse_kv(toks[3], "bw", lineno);
      l.latency_s = parse_kv(toks[4], "lat", lineno);
      links.push_back(l);
    } else {
      parse_fail(lineno, "unknown record '" + toks[0] + "'");
    }
  }

  std::sort(nodes.begin(), nodes.end(), [](const Node& x, const Node& y) { return x.id < y.id; });
  return Topology::build(std::move(nodes), std::move(links), seed);
}

Topology load_topology(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot read " + path);
  return load_topology(in);
}

} // namespace narses::topo
