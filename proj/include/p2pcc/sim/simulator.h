#ifndef P2PCC_SIM_SIMULATOR_H_
#define P2PCC_SIM_SIMULATOR_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "p2pcc/control/controller.h"
#include "p2pcc/sim/bottleneck_queue.h"
#include "p2pcc/sim/delay_link.h"
#include "p2pcc/sim/event_queue.h"
#include "p2pcc/sim/metrics_log.h"
#include "p2pcc/sim/scenario_config.h"
#include "p2pcc/sim/tcp_endpoint.h"
#include "p2pcc/traffic/block_source.h"

namespace p2pcc {

// Whole-run counters, mostly for invariant checks.
struct SimStats {
  std::int64_t enqueued = 0;
  std::int64_t served = 0;
  std::int64_t dropped = 0;
  std::int64_t resident = 0;
  double served_bits = 0.0;
  std::vector<double> served_bits_per_flow;
  std::int64_t fifo_violations = 0;
  // Times the server sat idle with packets waiting.
  std::int64_t idle_with_backlog = 0;
  std::int64_t p2p_sent = 0;
  std::int64_t p2p_acked = 0;
  std::int64_t p2p_lost = 0;
  std::int64_t p2p_unknown_acks = 0;
  std::int64_t p2p_in_flight = 0;
  std::int64_t conservation_violations = 0;
  std::int64_t block_interleavings = 0;
};

// Sender -> access link -> drop-tail bottleneck -> per-receiver forward link
// -> receiver, with per-packet acks returning over loss-free ack links. The
// P2P controller ticks every period; metrics are sampled on the same grid.
class Simulator {
 public:
  // Validates the config; throws std::invalid_argument on failure.
  explicit Simulator(ScenarioConfig config);
  ~Simulator();

  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  MetricsLog Run();

  const SimStats& stats() const { return stats_; }
  const Controller& controller() const { return controller_; }
  const ScenarioConfig& config() const { return config_; }

 private:
  struct PeriodAccumulator;

  void Transmit(SimPacket packet, double now);
  void OnArrivalAtBottleneck(SimPacket packet, double now);
  void StartService(double now);
  void OnDeparture(double now);
  void OnDelivery(SimPacket packet, double now);
  void OnAckAtSender(const SimPacket& packet, double now);
  void OnPeriodBoundary(std::int64_t k);
  void SendP2pPacket(const BlockPacket& block_packet, double now);
  void RecordRow(double now);
  void CheckConservation();
  std::size_t ReceiverIndex(ReceiverId id) const;

  ScenarioConfig config_;
  EventQueue events_;
  Controller controller_;
  BlockSource source_;
  BottleneckQueue bottleneck_;
  DelayLink access_link_;
  std::vector<DelayLink> forward_links_;
  std::vector<DelayLink> ack_links_;
  std::vector<std::unique_ptr<TcpEndpoint>> tcp_flows_;
  std::unique_ptr<PeriodAccumulator> period_;
  MetricsLog log_;
  SimStats stats_;
  TickSnapshot last_tick_;
  double last_departure_enqueue_s_ = -1.0;
  std::uint64_t last_block_id_ = 0;
  bool any_block_sent_ = false;
};

// Runs one scenario end to end.
MetricsLog RunScenario(const ScenarioConfig& config);

}  // namespace p2pcc

#endif  // P2PCC_SIM_SIMULATOR_H_
