#include "narses/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace narses::flow {

namespace {

void schedule_starts(sim::Engine& engine, const Scenario& scenario) {
  for (const ScenarioFlow& f : scenario.flows)
    engine.schedule(f.start, sim::FlowStart{f.id, f.src, f.dst, f.size_bytes});
}

class DirectRunner : public sim::EventHandler {
public:
  DirectRunner(const Scenario& scenario, const HostTable& hosts, bool check)
      : hosts_(&hosts), check_(check), model_(hosts, engine_) {
    schedule_starts(engine_, scenario);
  }

  void on_flow_start(const sim::FlowStart& s, sim::SimTime now) override {
    model_.start_flow(s.flow, s.src, s.dst, s.size_bytes, now);
    if (check_) verify();
  }

  void on_flow_completion(const sim::FlowCompletion& c, sim::SimTime now) override {
    if (auto d = model_.on_completion(c.flow, c.version, now))
      completions_.push_back({c.flow, d->transmit_end.seconds(), d->delivered.seconds()});
    if (check_) verify();
  }

  void on_deliver(const sim::Deliver&, sim::SimTime) override {
    fail(Errc::InvariantViolation, "transport event in a model-only run");
  }

  SimulateResult run() {
    SimulateResult r;
    r.summary = engine_.run(*this);
    std::sort(completions_.begin(), completions_.end(),
              [](const Completion& a, const Completion& b) { return a.flow < b.flow; });
    r.completions = std::move(completions_);
    r.counters = model_.counters();
    report_.clamp_firings = r.counters.clamp_firings;
    report_.completion_rate_decreases = r.counters.completion_rate_decreases;
    report_.max_byte_error_rel = r.counters.max_byte_error_rel;
    r.invariants = report_;
    return r;
  }

private:
  // Rebuild loads and rates from first principles and diff against the
  // model's incremental bookkeeping.
  void verify() {
    const int n = hosts_->host_count();
    std::vector<int> loads(static_cast<std::size_t>(n), 0);
    for (const auto& [id, f] : model_.flows()) {
      (void)id;
      if (f.state != FlowState::Transmitting) continue;
      ++loads[f.src];
      ++loads[f.dst];
    }
    if (loads != model_.loads()) ++report_.load_mismatches;

    std::vector<double> used(static_cast<std::size_t>(n), 0.0);
    for (const auto& [id, f] : model_.flows()) {
      (void)id;
      if (f.state != FlowState::Transmitting) continue;
      const double want =
          min_share_rate(hosts_->bw(f.src), loads[f.src], hosts_->bw(f.dst), loads[f.dst]);
      if (want != f.rate_bps) ++report_.rate_formula_violations;
      used[f.src] += f.rate_bps;
      used[f.dst] += f.rate_bps;
    }
    for (int h = 0; h < n; ++h)
      // tiny relative slack: a sum of k rounded shares can exceed the
      // capacity by a few ulps
      if (used[h] > hosts_->bw(static_cast<HostId>(h)) * (1.0 + 1e-9)) ++report_.capacity_violations;
  }

  const HostTable* hosts_;
  bool check_;
  sim::Engine engine_;
  BandwidthShareModel model_;
  std::vector<Completion> completions_;
  InvariantReport report_;
};

// Same event-driven machinery as BandwidthShareModel, but every event
// settles and recomputes every active flow. No incident bookkeeping at all;
// this is the brute-force semantics the optimized model must match.
class GlobalRecomputeRunner : public sim::EventHandler {
public:
  GlobalRecomputeRunner(const Scenario& scenario, const HostTable& hosts)
      : hosts_(&hosts), loads_(static_cast<std::size_t>(hosts.host_count()), 0) {
    schedule_starts(engine_, scenario);
  }

  void on_flow_start(const sim::FlowStart& s, sim::SimTime now) override {
    if (s.src >= loads_.size() || s.dst >= loads_.size())
      fail(Errc::UnknownHost, "unknown endpoint");
    if (!(s.size_bytes > 0.0)) fail(Errc::ZeroSize, "flow size must be positive");
    auto [it, fresh] = flows_.try_emplace(s.flow);
    if (!fresh) fail(Errc::InvariantViolation, "duplicate flow id");
    Flow& f = it->second;
    f.id = s.flow;
    f.src = s.src;
    f.dst = s.dst;
    f.size_bytes = s.size_bytes;
    f.segment_start = f.last_settle = now;
    f.segment_remaining = f.remaining = s.size_bytes;
    ++loads_[f.src];
    ++loads_[f.dst];
    reallocate_all(now, &f);
  }

  void on_flow_completion(const sim::FlowCompletion& c, sim::SimTime now) override {
    auto it = flows_.find(c.flow);
    if (it == flows_.end()) fail(Errc::UnknownFlow, "completion for unknown flow");
    Flow& f = it->second;
    if (f.state != FlowState::Transmitting || c.version != f.version) return; // stale
    f.drained += f.rate_bps * (now.seconds() - f.segment_start.seconds()) / 8.0;
    f.remaining = 0.0;
    f.segment_remaining = 0.0;
    f.segment_start = f.last_settle = now;
    f.state = FlowState::Delivered;
    --loads_[f.src];
    --loads_[f.dst];
    completions_.push_back(
        {f.id, now.seconds(), now.seconds() + hosts_->latency(f.src, f.dst)});
    reallocate_all(now, nullptr);
  }

  void on_deliver(const sim::Deliver&, sim::SimTime) override {
    fail(Errc::InvariantViolation, "transport event in a model-only run");
  }

  std::vector<Completion> run() {
    engine_.run(*this);
    std::sort(completions_.begin(), completions_.end(),
              [](const Completion& a, const Completion& b) { return a.flow < b.flow; });
    return std::move(completions_);
  }

private:
  void reallocate_all(sim::SimTime now, Flow* started) {
    // Settling inside a rate segment is anchored, hence harmless; doing it
    // for every flow at every event is the whole point of this runner.
    for (auto& [id, f] : flows_) {
      (void)id;
      if (f.state == FlowState::Transmitting) f.settle(now, &clamps_);
    }
    for (auto& [id, f] : flows_) {
      if (f.state != FlowState::Transmitting) continue;
      const double rate =
          min_share_rate(hosts_->bw(f.src), loads_[f.src], hosts_->bw(f.dst), loads_[f.dst]);
      if (started && id == started->id) {
        f.rate_bps = rate;
        engine_.schedule(transmit_end(f, now), sim::FlowCompletion{f.id, f.version});
      } else if (rate != f.rate_bps) {
        f.change_rate(now, rate, &clamps_);
        engine_.schedule(transmit_end(f, now), sim::FlowCompletion{f.id, f.version});
      }
    }
  }

  const HostTable* hosts_;
  sim::Engine engine_;
  std::map<FlowId, Flow> flows_;
  std::vector<int> loads_;
  std::vector<Completion> completions_;
  std::uint64_t clamps_ = 0;
};

} // namespace

SimulateResult simulate(const Scenario& scenario, const HostTable& hosts,
                        const SimulateOptions& options) {
  DirectRunner runner(scenario, hosts, options.check_invariants);
  return runner.run();
}

std::vector<Completion> global_recompute_oracle(const Scenario& scenario, const HostTable& hosts) {
  GlobalRecomputeRunner runner(scenario, hosts);
  return runner.run();
}

std::vector<Completion> fluid_timestep_oracle(const Scenario& scenario, const HostTable& hosts,
                                              double dt_s) {
  if (!(dt_s > 0.0) || !std::isfinite(dt_s)) fail(Errc::InvalidParams, "dt must be positive");

  std::vector<ScenarioFlow> pending = scenario.flows;
  std::sort(pending.begin(), pending.end(), [](const ScenarioFlow& a, const ScenarioFlow& b) {
    if (a.start != b.start) return a.start < b.start;
    return a.id < b.id;
  });

  struct Active {
    FlowId id;
    HostId src, dst;
    double remaining;
    double begin;  // drain origin inside its first step; meaningless once settled in
    bool fresh;
  };
  std::vector<Active> active;
  std::vector<double> rates;
  std::vector<int> load(static_cast<std::size_t>(hosts.host_count()), 0);
  std::vector<Completion> out;

  std::size_t next = 0;
  std::int64_t k = 0;

  while (next < pending.size() || !active.empty()) {
    if (active.empty()) {
      // Nothing draining; jump to the step containing the next arrival
      // instead of grinding through empty steps.
      const double s = pending[next].start.seconds();
      auto k2 = static_cast<std::int64_t>(std::floor(s / dt_s));
      if (k2 < k) k2 = k;
      while (static_cast<double>(k2 + 1) * dt_s <= s) ++k2;
      while (k2 > k && static_cast<double>(k2) * dt_s > s) --k2;
      k = k2;
    }

    const double t0 = static_cast<double>(k) * dt_s;
    const double t1 = static_cast<double>(k + 1) * dt_s;

    // Flows arriving inside [t0, t1) join this step and drain only the
    // leftover piece of it.
    while (next < pending.size() && pending[next].start.seconds() < t1) {
      const ScenarioFlow& f = pending[next];
      if (!(f.size_bytes > 0.0)) fail(Errc::ZeroSize, "flow size must be positive");
      active.push_back({f.id, f.src, f.dst, f.size_bytes, std::max(f.start.seconds(), t0), true});
      ++next;
    }

    // Drain the step in segments. Rates are recomputed whenever a flow
    // empties, so within-step completion chains do not smear; arrivals stay
    // quantized to the grid, which is where the method's O(dt) error lives.
    double seg = t0;
    while (!active.empty()) {
      for (const Active& a : active) {
        ++load[a.src];
        ++load[a.dst];
      }
      rates.clear();
      for (const Active& a : active)
        rates.push_back(std::min(hosts.bw(a.src) / load[a.src], hosts.bw(a.dst) / load[a.dst]));
      for (const Active& a : active) {
        --load[a.src];
        --load[a.dst];
      }

      // A fresh flow drains from its own begin; everyone else from seg.
      auto zero_crossing = [&](std::size_t i) {
        const double window = active[i].fresh ? active[i].begin : seg;
        return window + 8.0 * active[i].remaining / rates[i];
      };

      double tc = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < active.size(); ++i) tc = std::min(tc, zero_crossing(i));

      if (!(tc <= t1)) {
        // No completion left in this step; drain everyone to the boundary.
        // A settled flow on an untouched step covers exactly dt, which keeps
        // long drains free of boundary-difference dust.
        for (std::size_t i = 0; i < active.size(); ++i) {
          Active& a = active[i];
          const double window = a.fresh ? a.begin : seg;
          const double span = (seg == t0 && (!a.fresh || a.begin == t0)) ? dt_s : t1 - window;
          if (span > 0.0) {
            a.remaining = std::max(0.0, a.remaining - rates[i] * span / 8.0);
            a.fresh = false;
          }
        }
        break;
      }

      // Settle everyone up to tc, then retire the flows that hit zero there.
      std::size_t keep = 0;
      for (std::size_t i = 0; i < active.size(); ++i) {
        Active a = active[i];
        if (zero_crossing(i) == tc) {
          out.push_back({a.id, tc, tc + hosts.latency(a.src, a.dst)});
          continue;
        }
        const double window = a.fresh ? a.begin : seg;
        const double span = tc - window;
        if (span > 0.0) {
          a.remaining = std::max(0.0, a.remaining - rates[i] * span / 8.0);
          a.fresh = false;
        }
        active[keep++] = a;
      }
      active.resize(keep);
      seg = tc;
    }
    ++k;
  }

  std::sort(out.begin(), out.end(),
            [](const Completion& a, const Completion& b) { return a.flow < b.flow; });
  return out;
}

} // namespace narses::flow
