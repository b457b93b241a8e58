#ifndef P2PCC_TRAFFIC_TCP_RENO_H_
#define P2PCC_TRAFFIC_TCP_RENO_H_

#include "p2pcc/traffic/loss_based_window.h"

namespace p2pcc {

struct RenoParams {
  double initial_cwnd = 2.0;
  double initial_ssthresh = 1e9;
  // Receiver-window cap on cwnd.
  double max_cwnd = 1e9;
};

// Reno / NewReno window: slow start adds one packet per ack, congestion
// avoidance 1/cwnd per ack, a triple duplicate halves the window and enters
// fast recovery, a timeout collapses it to one packet.
class TcpRenoFlow : public LossBasedWindow {
 public:
  explicit TcpRenoFlow(RenoParams params = {});

  void OnAck() override;
  void OnLoss(LossKind kind) override;
  void OnRecoveryExit() override;

  double cwnd() const override { return cwnd_; }
  double ssthresh() const { return ssthresh_; }
  TcpPhase phase() const override { return phase_; }

 private:
  RenoParams params_;
  double cwnd_;
  double ssthresh_;
  TcpPhase phase_;
};

}  // namespace p2pcc

#endif  // P2PCC_TRAFFIC_TCP_RENO_H_
