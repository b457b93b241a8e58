#ifndef P2PCC_TRAFFIC_TCP_BIC_H_
#define P2PCC_TRAFFIC_TCP_BIC_H_

#include "p2pcc/traffic/loss_based_window.h"

namespace p2pcc {

// Defaults follow the original BIC proposal.
struct BicParams {
  double initial_cwnd = 2.0;
  double initial_ssthresh = 1e9;
  double max_cwnd = 1e9;
  // Multiplicative decrease: cwnd <- cwnd * (1 - beta) on loss.
  double beta = 0.125;
  // Per-RTT increment bounds.
  double s_max = 32.0;
  double s_min = 0.01;
  // Below this window BIC behaves like Reno.
  double low_window = 14.0;
  bool fast_convergence = true;
};

// Binary increase congestion control. Below w_max the window climbs toward
// the midpoint of (cwnd, w_max) by at most s_max per RTT; at or above w_max
// it probes with growing steps.
class TcpBicFlow : public LossBasedWindow {
 public:
  explicit TcpBicFlow(BicParams params = {});

  void OnAck() override;
  void OnLoss(LossKind kind) override;
  void OnRecoveryExit() override;

  double cwnd() const override { return cwnd_; }
  TcpPhase phase() const override { return phase_; }
  double w_max() const { return w_max_; }
  double ssthresh() const { return ssthresh_; }

  // Window growth BIC applies over the next RTT from the current state.
  double IncrementPerRtt() const;

  // Test hook: place the flow in congestion avoidance at a given point.
  void SetState(double cwnd, double w_max);

 private:
  BicParams params_;
  double cwnd_;
  double ssthresh_;
  double w_max_ = 0.0;
  TcpPhase phase_;
};

}  // namespace p2pcc

#endif  // P2PCC_TRAFFIC_TCP_BIC_H_
