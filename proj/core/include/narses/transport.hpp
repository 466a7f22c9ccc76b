#pragma once

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "narses/bandwidth_share.hpp"
#include "narses/naive_model.hpp"

namespace narses::transport {

// A message is any application-meaningful chunk of bytes; the simulator
// never fragments it. Ports are plain demultiplexing keys.
struct Message {
  double size_bytes;
  std::uint64_t tag; // opaque application token, echoed in the record
  HostId src;
  HostId dst;
  int dst_port;
};

struct DeliveryRecord {
  FlowId flow;
  std::uint64_t tag;
  double size_bytes;
  sim::SimTime start;     // when send() was called
  sim::SimTime delivered; // duration = delivered - start
};

using DeliveryHandler = std::function<void(const DeliveryRecord&)>;

struct Listener {
  HostId host;
  int port;
  DeliveryHandler handler;
};

// Ties an engine, a flow model, and listeners into one run. Handlers run
// inline at the delivery instant; anything they send is scheduled at that
// same instant. Each accepted send produces exactly one delivery.
class Simulation : public sim::EventHandler {
public:
  Simulation(flow::HostTable hosts, flow::ModelKind kind, double setup_delay_s = 0.0);

  // The model keeps pointers back into this object, so it must stay put.
  // Prvalue returns still work: they construct in place.
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  // PortInUse if (host, port) is already bound.
  const Listener& listen(HostId host, int port, DeliveryHandler handler);

  // Queue a message for transmission at the current clock (plus the setup
  // delay, if configured). Non-blocking; returns the flow id. The
  // destination must already be listening.
  FlowId send(const Message& msg);

  // Same, but the transfer starts at `at`. For pre-scheduled workloads.
  FlowId send_at(const Message& msg, sim::SimTime at);

  sim::RunSummary run();

  sim::Engine& engine() noexcept { return engine_; }
  const flow::HostTable& hosts() const noexcept { return hosts_; }
  flow::ModelKind model_kind() const noexcept { return kind_; }

  // All records handed to listeners, in delivery order.
  const std::vector<DeliveryRecord>& deliveries() const noexcept { return log_; }

  // Bandwidth-share bookkeeping (counters are all zero under Naive).
  flow::BandwidthShareModel::Counters model_counters() const;

  void on_flow_start(const sim::FlowStart&, sim::SimTime now) override;
  void on_flow_completion(const sim::FlowCompletion&, sim::SimTime now) override;
  void on_deliver(const sim::Deliver&, sim::SimTime now) override;

private:
  struct FlowMeta {
    std::uint64_t tag;
    int dst_port;
    HostId dst;
    sim::SimTime sent;
    double size_bytes;
  };

  flow::HostTable hosts_;
  flow::ModelKind kind_;
  double setup_delay_s_;
  sim::Engine engine_;
  std::unique_ptr<flow::BandwidthShareModel> share_;
  std::unique_ptr<flow::NaiveModel> naive_;
  std::map<std::pair<HostId, int>, Listener> listeners_;
  std::map<FlowId, FlowMeta> meta_;
  std::map<FlowId, DeliveryRecord> ready_; // completed, awaiting their Deliver event
  std::vector<DeliveryRecord> log_;
  FlowId next_id_ = 0;
};

} // namespace narses::transport
