#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "narses/bandwidth_share.hpp"
#include "narses/engine.hpp"
#include "narses/types.hpp"

namespace narses::harness {

// One output row per flow. start is the send instant; delivered is when the
// last byte reached the receiver.
struct FlowRecord {
  FlowId flow_id;
  HostId src;
  HostId dst;
  double size_bytes;
  double start_s;
  double delivered_s;
  double duration_s() const { return delivered_s - start_s; }
};

struct AggregateStats {
  double mean_duration_s = 0.0;
  double median_duration_s = 0.0;
  double p95_duration_s = 0.0; // nearest-rank
  double max_duration_s = 0.0;
  std::size_t flow_count = 0;
};

// EmptyInput on no records; InvariantViolation on a non-positive duration.
AggregateStats aggregate(const std::vector<FlowRecord>& records);

// Engine and model tallies that accompany the aggregate in stats.json.
struct RunMetrics {
  sim::RunSummary summary;
  flow::BandwidthShareModel::Counters counters;
  double wall_clock_s = 0.0; // event loop only, not setup
};

// Header flow_id,src,dst,size_bytes,start_s,delivered_s,duration_s; times at
// nine decimal places.
std::string flow_csv(const std::vector<FlowRecord>& records);

// Pretty-printed JSON with alphabetically ordered keys. wall_clock_s and
// peak_rss_bytes vary run to run; every other field is deterministic for a
// fixed config and seed.
std::string stats_json_text(const AggregateStats& agg, const RunMetrics& metrics);

void write_text_file(const std::string& path, const std::string& content); // IoError

std::uint64_t peak_rss_bytes();

} // namespace narses::harness
