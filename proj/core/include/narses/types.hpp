#pragma once

#include <cstdint>

namespace narses {

// Topology node identifier. Dense, assigned in generation order.
using NodeId = std::uint32_t;

// Dense end-host index used by the flow model and transport layers.
// The harness maps these back to topology NodeIds for reporting.
using HostId = std::uint32_t;

using FlowId = std::uint64_t;

} // namespace narses
