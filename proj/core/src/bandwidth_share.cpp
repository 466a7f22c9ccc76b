#include "narses/bandwidth_share.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace narses::flow {

BandwidthShareModel::BandwidthShareModel(const HostTable& hosts, sim::Engine& engine)
    : hosts_(&hosts),
      engine_(&engine),
      loads_(static_cast<std::size_t>(hosts.host_count()), 0),
      by_host_(static_cast<std::size_t>(hosts.host_count())) {}

FlowId BandwidthShareModel::start_flow(FlowId id, HostId src, HostId dst, double size_bytes,
                                       sim::SimTime now) {
  if (src >= by_host_.size()) fail(Errc::UnknownHost, "no host " + std::to_string(src));
  if (dst >= by_host_.size()) fail(Errc::UnknownHost, "no host " + std::to_string(dst));
  if (src == dst) fail(Errc::InvalidParams, "flow endpoints must be distinct");
  if (!(size_bytes > 0.0)) fail(Errc::ZeroSize, "flow size must be positive");

  auto [it, fresh] = flows_.try_emplace(id);
  if (!fresh) fail(Errc::InvariantViolation, "duplicate flow id " + std::to_string(id));
  Flow& f = it->second;
  f.id = id;
  f.src = src;
  f.dst = dst;
  f.size_bytes = size_bytes;
  f.segment_start = f.last_settle = now;
  f.segment_remaining = f.remaining = size_bytes;

  ++loads_[src];
  ++loads_[dst];
  by_host_[src].push_back(id);
  by_host_[dst].push_back(id);

  reallocate(src, dst, now, &f, false);
  return id;
}

std::optional<FlowDelivery> BandwidthShareModel::on_completion(FlowId id, std::uint64_t version,
                                                               sim::SimTime now) {
  auto it = flows_.find(id);
  if (it == flows_.end())
    fail(Errc::UnknownFlow, "completion event for unknown flow " + std::to_string(id));
  Flow& f = it->second;
  if (f.state != FlowState::Transmitting || version != f.version) {
    ++counters_.stale_discarded;
    return std::nullopt;
  }

  // Account the final segment through the same arithmetic that produced the
  // event time; the total must land on the flow's size to float precision.
  f.drained += f.rate_bps * (now.seconds() - f.segment_start.seconds()) / 8.0;
  f.remaining = 0.0;
  f.segment_remaining = 0.0;
  f.segment_start = now;
  f.last_settle = now;
  f.state = FlowState::Delivered;

  const double err = std::abs(f.drained - f.size_bytes) / f.size_bytes;
  counters_.max_byte_error_rel = std::max(counters_.max_byte_error_rel, err);

  --loads_[f.src];
  --loads_[f.dst];
  detach(f.src, id);
  detach(f.dst, id);
  ++counters_.delivered;

  reallocate(f.src, f.dst, now, nullptr, true);

  const double lat = hosts_->latency(f.src, f.dst);
  return FlowDelivery{id, now, sim::SimTime(now.seconds() + lat)};
}

const Flow& BandwidthShareModel::flow(FlowId id) const {
  auto it = flows_.find(id);
  if (it == flows_.end()) fail(Errc::UnknownFlow, "no flow " + std::to_string(id));
  return it->second;
}

void BandwidthShareModel::reallocate(HostId a, HostId b, sim::SimTime now, Flow* started,
                                     bool completion) {
  scratch_.clear();
  scratch_.insert(scratch_.end(), by_host_[a].begin(), by_host_[a].end());
  scratch_.insert(scratch_.end(), by_host_[b].begin(), by_host_[b].end());
  std::sort(scratch_.begin(), scratch_.end());
  scratch_.erase(std::unique(scratch_.begin(), scratch_.end()), scratch_.end());

  for (FlowId fid : scratch_) {
    Flow& f = flows_.at(fid);
    const double rate =
        min_share_rate(hosts_->bw(f.src), loads_[f.src], hosts_->bw(f.dst), loads_[f.dst]);
    ++counters_.rate_recomputations;
    if (started && fid == started->id) {
      // Initial assignment; version stays 0 and the anchor is already set.
      f.rate_bps = rate;
      schedule_completion(f, now);
      ++counters_.rate_changes;
    } else if (rate != f.rate_bps) {
      // Exact compare on purpose: unchanged loads feed the same division,
      // so an untouched allocation reproduces the identical double.
      if (completion && rate < f.rate_bps) ++counters_.completion_rate_decreases;
      f.change_rate(now, rate, &counters_.clamp_firings);
      schedule_completion(f, now);
      ++counters_.rate_changes;
    }
  }
}

void BandwidthShareModel::schedule_completion(const Flow& f, sim::SimTime now) {
  engine_->schedule(transmit_end(f, now), sim::FlowCompletion{f.id, f.version});
}

void BandwidthShareModel::detach(HostId h, FlowId id) {
  auto& v = by_host_[h];
  auto it = std::find(v.begin(), v.end(), id);
  if (it == v.end())
    fail(Errc::InvariantViolation, "flow " + std::to_string(id) + " missing from host list");
  *it = v.back();
  v.pop_back();
}

} // namespace narses::flow
