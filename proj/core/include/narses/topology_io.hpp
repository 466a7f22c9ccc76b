#pragma once

#include <iosfwd>
#include <string>

#include "narses/topology.hpp"

namespace narses::topo {

// Text format, one record per line:
//
//   narses-topo v1 seed=<int>
//   node <id> <kind> [bw=<bits/s>]
//   link <id1> <id2> bw=<bits/s> lat=<seconds>
//
// Kinds are transit|stub|host; only host lines carry bw. Nodes are written
// in ascending id order, links ascending by (min id, max id). Floats are
// printed with enough digits to round-trip exactly, so save(load(save(t)))
// is byte-identical to save(t).
void save_topology(const Topology& topo, std::ostream& out);
void save_topology(const Topology& topo, const std::string& path);

Topology load_topology(std::istream& in);          // ParseError carries a line number
Topology load_topology(const std::string& path);

} // namespace narses::topo
