#include "narses/transport.hpp"

#include <cmath>

#include "narses/error.hpp"

namespace narses::transport {

Simulation::Simulation(flow::HostTable hosts, flow::ModelKind kind, double setup_delay_s)
    : hosts_(std::move(hosts)), kind_(kind), setup_delay_s_(setup_delay_s) {
  if (!(setup_delay_s >= 0.0) || !std::isfinite(setup_delay_s))
    fail(Errc::InvalidParams, "setup delay must be finite and non-negative");
  if (kind_ == flow::ModelKind::BandwidthShare)
    share_ = std::make_unique<flow::BandwidthShareModel>(hosts_, engine_);
  else
    naive_ = std::make_unique<flow::NaiveModel>(hosts_, engine_);
}

const Listener& Simulation::listen(HostId host, int port, DeliveryHandler handler) {
  if (host >= static_cast<HostId>(hosts_.host_count()))
    fail(Errc::UnknownHost, "listen: host " + std::to_string(host) + " out of range");
  if (!handler)
    fail(Errc::InvalidParams, "listen: empty handler");
  auto [it, inserted] = listeners_.try_emplace({host, port}, Listener{host, port, std::move(handler)});
  if (!inserted)
    fail(Errc::PortInUse,
         "port " + std::to_string(port) + " on host " + std::to_string(host) + " already bound");
  return it->second;
}

FlowId Simulation::send(const Message& msg) { return send_at(msg, engine_.now()); }

FlowId Simulation::send_at(const Message& msg, sim::SimTime at) {
  const auto hosts = static_cast<HostId>(hosts_.host_count());
  if (msg.src >= hosts || msg.dst >= hosts)
    fail(Errc::UnknownHost, "send: endpoint out of range");
  if (msg.src == msg.dst)
    fail(Errc::InvalidParams, "send: src == dst");
  if (!(msg.size_bytes > 0.0) || !std::isfinite(msg.size_bytes))
    fail(Errc::ZeroSize, "send: size must be positive and finite");
  if (listeners_.find({msg.dst, msg.dst_port}) == listeners_.end())
    fail(Errc::UnboundPort, "send: no listener on host " + std::to_string(msg.dst) +
                                " port " + std::to_string(msg.dst_port));
  FlowId id = next_id_++;
  meta_.emplace(id, FlowMeta{msg.tag, msg.dst_port, msg.dst, at, msg.size_bytes});
  engine_.schedule(sim::after(at, setup_delay_s_),
                   sim::FlowStart{id, msg.src, msg.dst, msg.size_bytes});
  return id;
}

sim::RunSummary Simulation::run() { return engine_.run(*this); }

void Simulation::on_flow_start(const sim::FlowStart& ev, sim::SimTime now) {
  if (share_)
    share_->start_flow(ev.flow, ev.src, ev.dst, ev.size_bytes, now);
  else
    naive_->start_flow(ev.flow, ev.src, ev.dst, ev.size_bytes, now);
}

void Simulation::on_flow_completion(const sim::FlowCompletion& ev, sim::SimTime now) {
  std::optional<flow::FlowDelivery> done;
  if (share_)
    done = share_->on_completion(ev.flow, ev.version, now);
  else
    done = naive_->on_completion(ev.flow, ev.version, now);
  if (!done)
    return; // stale
  auto mit = meta_.find(ev.flow);
  if (mit == meta_.end())
    fail(Errc::InvariantViolation, "completion for flow with no send record");
  const FlowMeta& m = mit->second;
  ready_.insert_or_assign(ev.flow, DeliveryRecord{ev.flow, m.tag, m.size_bytes, m.sent, done->delivered});
  // The model accounts for propagation; hand the payload to the listener
  // only once it has actually arrived.
  engine_.schedule(done->delivered, sim::Deliver{ev.flow});
}

void Simulation::on_deliver(const sim::Deliver& ev, sim::SimTime now) {
  auto rit = ready_.find(ev.flow);
  if (rit == ready_.end())
    fail(Errc::InvariantViolation, "deliver event for flow that never completed");
  auto mit = meta_.find(ev.flow);
  if (mit == meta_.end())
    fail(Errc::InvariantViolation, "deliver event for flow with no send record");
  DeliveryRecord rec = rit->second;
  const HostId dst = mit->second.dst;
  const int port = mit->second.dst_port;
  ready_.erase(rit);
  meta_.erase(mit);
  if (rec.delivered.seconds() != now.seconds())
    fail(Errc::InvariantViolation, "deliver event fired at the wrong time");
  auto lit = listeners_.find({dst, port});
  if (lit == listeners_.end())
    fail(Errc::UnboundPort, "listener vanished before delivery");
  log_.push_back(rec);
  lit->second.handler(rec); // may send more; those flows start at this instant
}

flow::BandwidthShareModel::Counters Simulation::model_counters() const {
  if (share_)
    return share_->counters();
  return {};
}

} // namespace narses::transport
