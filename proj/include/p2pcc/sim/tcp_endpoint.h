#ifndef P2PCC_SIM_TCP_ENDPOINT_H_
#define P2PCC_SIM_TCP_ENDPOINT_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>

#include "p2pcc/sim/packet.h"
#include "p2pcc/sim/scenario_config.h"
#include "p2pcc/traffic/loss_based_window.h"

namespace p2pcc {

// Packet-level TCP sender with an endless backlog. Every delivered packet is
// acked individually; a packet overtaken by three later acks is lost, and a
// retransmission timeout resets the window. Lost data is not resent: the
// flow only needs to load the bottleneck.
class TcpEndpoint {
 public:
  using SendFn = std::function<void(SimPacket)>;

  TcpEndpoint(FlowId flow, const CompetingFlowConfig& config,
              double packet_size_bits, SendFn send);

  void Start(double now);
  void Stop() { active_ = false; }
  void OnAck(const SimPacket& packet, double now);
  // Fires the retransmission timer if it expired.
  void CheckTimeout(double now);

  const LossBasedWindow& window() const { return *window_; }
  std::int64_t in_flight() const {
    return static_cast<std::int64_t>(outstanding_.size());
  }
  std::int64_t losses() const { return losses_; }
  std::int64_t timeouts() const { return timeouts_; }
  double rto() const { return rto_s_; }

 private:
  struct Outstanding {
    double send_time_s = 0.0;
    int later_acks = 0;
  };

  void TrySend(double now);
  void UpdateRtt(double sample);

  FlowId flow_;
  CompetingFlowConfig config_;
  double packet_size_bits_;
  SendFn send_;
  std::unique_ptr<LossBasedWindow> window_;
  bool active_ = false;
  std::uint64_t next_seq_ = 0;
  std::map<std::uint64_t, Outstanding> outstanding_;
  // Fast recovery ends when a packet sent at or after this seq is acked.
  std::uint64_t recover_seq_ = 0;
  double srtt_s_ = 0.0;
  double rttvar_s_ = 0.0;
  double rto_s_ = 1.0;
  bool have_rtt_ = false;
  double last_progress_s_ = 0.0;
  std::int64_t losses_ = 0;
  std::int64_t timeouts_ = 0;
};

}  // namespace p2pcc

#endif  // P2PCC_SIM_TCP_ENDPOINT_H_
