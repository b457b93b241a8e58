#include "p2pcc/traffic/tcp_bic.h"

#include <algorithm>

namespace p2pcc {

TcpBicFlow::TcpBicFlow(BicParams params)
    : params_(params),
      cwnd_(std::clamp(params.initial_cwnd, 1.0, params.max_cwnd)),
      ssthresh_(std::max(params.initial_ssthresh, 2.0)),
      phase_(cwnd_ < ssthresh_ ? TcpPhase::kSlowStart
                               : TcpPhase::kCongestionAvoidance) {}

double TcpBicFlow::IncrementPerRtt() const {
  if (cwnd_ < params_.low_window)
    return 1.0;
  if (cwnd_ < w_max_) {
    // Binary search: jump to the midpoint, in steps of at most s_max.
    const double midpoint = (cwnd_ + w_max_) / 2.0;
    return std::clamp(midpoint - cwnd_, params_.s_min, params_.s_max);
  }
  // Max probing: slow growth just past w_max, accelerating up to s_max.
  return std::clamp(cwnd_ - w_max_, 1.0, params_.s_max);
}

void TcpBicFlow::OnAck() {
  switch (phase_) {
    case TcpPhase::kFastRecovery:
      return;
    case TcpPhase::kSlowStart:
      cwnd_ += 1.0;
      if (cwnd_ >= ssthresh_)
        phase_ = TcpPhase::kCongestionAvoidance;
      break;
    case TcpPhase::kCongestionAvoidance:
      cwnd_ += IncrementPerRtt() / cwnd_;
      break;
  }
  cwnd_ = std::min(cwnd_, params_.max_cwnd);
}

void TcpBicFlow::OnLoss(LossKind kind) {
  if (params_.fast_convergence && cwnd_ < w_max_)
    w_max_ = cwnd_ * (2.0 - params_.beta) / 2.0;
  else
    w_max_ = cwnd_;
  ssthresh_ = std::max(cwnd_ * (1.0 - params_.beta), 2.0);
  if (kind == LossKind::kTimeout) {
    cwnd_ = 1.0;
    phase_ = TcpPhase::kSlowStart;
    return;
  }
  cwnd_ = ssthresh_;
  phase_ = TcpPhase::kFastRecovery;
}

void TcpBicFlow::OnRecoveryExit() {
  if (phase_ != TcpPhase::kFastRecovery)
    return;
  cwnd_ = ssthresh_;
  phase_ = TcpPhase::kCongestionAvoidance;
}

void TcpBicFlow::SetState(double cwnd, double w_max) {
  cwnd_ = cwnd;
  w_max_ = w_max;
  ssthresh_ = std::max(2.0, std::min(ssthresh_, cwnd));
  phase_ = TcpPhase::kCongestionAvoidance;
}

}  // namespace p2pcc
