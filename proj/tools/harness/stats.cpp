#include "harness/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <sys/resource.h>

#include "json.hpp"
#include "narses/error.hpp"

namespace narses::harness {

AggregateStats aggregate(const std::vector<FlowRecord>& records) {
  if (records.empty())
    fail(Errc::EmptyInput, "aggregate: no flow records");
  std::vector<double> d;
  d.reserve(records.size());
  double sum = 0.0;
  for (const auto& r : records) {
    double dur = r.duration_s();
    if (!(dur > 0.0))
      fail(Errc::InvariantViolation,
           "flow " + std::to_string(r.flow_id) + " has non-positive duration");
    d.push_back(dur);
    sum += dur;
  }
  std::sort(d.begin(), d.end());
  const std::size_t n = d.size();
  AggregateStats s;
  s.flow_count = n;
  s.mean_duration_s = sum / static_cast<double>(n);
  s.median_duration_s = (n % 2 == 1) ? d[n / 2] : 0.5 * (d[n / 2 - 1] + d[n / 2]);
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
  s.p95_duration_s = d[rank - 1];
  s.max_duration_s = d.back();
  return s;
}

std::string flow_csv(const std::vector<FlowRecord>& records) {
  std::string out = "flow_id,src,dst,size_bytes,start_s,delivered_s,duration_s\n";
  char buf[256];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%llu,%u,%u,%.9g,%.9f,%.9f,%.9f\n",
                  static_cast<unsigned long long>(r.flow_id), r.src, r.dst, r.size_bytes,
                  r.start_s, r.delivered_s, r.duration_s());
    out += buf;
  }
  return out;
}

std::string stats_json_text(const AggregateStats& agg, const RunMetrics& metrics) {
  nlohmann::json j;
  j["mean_duration_s"] = agg.mean_duration_s;
  j["median_duration_s"] = agg.median_duration_s;
  j["p95_duration_s"] = agg.p95_duration_s;
  j["max_duration_s"] = agg.max_duration_s;
  j["flow_count"] = agg.flow_count;
  j["events_dispatched"] = metrics.summary.events_dispatched;
  j["events_scheduled"] = metrics.summary.events_scheduled;
  j["queue_high_water"] = metrics.summary.queue_high_water;
  j["rate_recomputations"] = metrics.counters.rate_recomputations;
  j["stale_events_discarded"] = metrics.counters.stale_discarded;
  j["wall_clock_s"] = metrics.wall_clock_s;
  j["peak_rss_bytes"] = peak_rss_bytes();
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    fail(Errc::IoError, "cannot open for writing: " + path);
  out << content;
  if (!out)
    fail(Errc::IoError, "write failed: " + path);
}

std::uint64_t peak_rss_bytes() {
  rusage u{};
  if (getrusage(RUSAGE_SELF, &u) != 0)
    return 0;
  return static_cast<std::uint64_t>(u.ru_maxrss) * 1024; // ru_maxrss is in KiB here
}

} // namespace narses::harness
