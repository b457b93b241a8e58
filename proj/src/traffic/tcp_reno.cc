#include "p2pcc/traffic/tcp_reno.h"

#include <algorithm>

namespace p2pcc {

TcpRenoFlow::TcpRenoFlow(RenoParams params)
    : params_(params),
      cwnd_(std::clamp(params.initial_cwnd, 1.0, params.max_cwnd)),
      ssthresh_(std::max(params.initial_ssthresh, 2.0)),
      phase_(cwnd_ < ssthresh_ ? TcpPhase::kSlowStart
                               : TcpPhase::kCongestionAvoidance) {}

void TcpRenoFlow::OnAck() {
  switch (phase_) {
    case TcpPhase::kFastRecovery:
      return;
    case TcpPhase::kSlowStart:
      cwnd_ += 1.0;
      if (cwnd_ >= ssthresh_)
        phase_ = TcpPhase::kCongestionAvoidance;
      break;
    case TcpPhase::kCongestionAvoidance:
      cwnd_ += 1.0 / cwnd_;
      break;
  }
  cwnd_ = std::min(cwnd_, params_.max_cwnd);
}

void TcpRenoFlow::OnLoss(LossKind kind) {
  ssthresh_ = std::max(cwnd_ / 2.0, 2.0);
  if (kind == LossKind::kTimeout) {
    cwnd_ = 1.0;
    phase_ = TcpPhase::kSlowStart;
    return;
  }
  cwnd_ = ssthresh_;
  phase_ = TcpPhase::kFastRecovery;
}

void TcpRenoFlow::OnRecoveryExit() {
  if (phase_ != TcpPhase::kFastRecovery)
    return;
  cwnd_ = ssthresh_;
  phase_ = TcpPhase::kCongestionAvoidance;
}

}  // namespace p2pcc
