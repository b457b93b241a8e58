#include "p2pcc/sim/tcp_endpoint.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "p2pcc/traffic/tcp_bic.h"
#include "p2pcc/traffic/tcp_reno.h"

namespace p2pcc {

namespace {

constexpr double kMaxRto = 60.0;
constexpr int kDupThreshold = 3;

std::unique_ptr<LossBasedWindow> MakeWindow(const CompetingFlowConfig& cfg) {
  if (cfg.variant == TcpVariant::kBic) {
    BicParams params;
    params.initial_ssthresh = cfg.initial_ssthresh;
    params.max_cwnd = cfg.max_window_packets;
    return std::make_unique<TcpBicFlow>(params);
  }
  RenoParams params;
  params.initial_ssthresh = cfg.initial_ssthresh;
  params.max_cwnd = cfg.max_window_packets;
  return std::make_unique<TcpRenoFlow>(params);
}

}  // namespace

TcpEndpoint::TcpEndpoint(FlowId flow, const CompetingFlowConfig& config,
                         double packet_size_bits, SendFn send)
    : flow_(flow),
      config_(config),
      packet_size_bits_(packet_size_bits),
      send_(std::move(send)),
      window_(MakeWindow(config)),
      rto_s_(std::max(1.0, config.min_rto_s)) {}

void TcpEndpoint::Start(double now) {
  active_ = true;
  last_progress_s_ = now;
  TrySend(now);
}

void TcpEndpoint::TrySend(double now) {
  if (!active_)
    return;
  const double limit =
      std::floor(std::min(window_->cwnd(), config_.max_window_packets));
  while (static_cast<double>(outstanding_.size()) < std::max(1.0, limit)) {
    if (outstanding_.empty())
      last_progress_s_ = now;
    SimPacket packet;
    packet.flow = flow_;
    packet.seq = next_seq_++;
    packet.receiver = config_.receiver;
    packet.size_bits = packet_size_bits_;
    packet.send_time_s = now;
    outstanding_.emplace(packet.seq, Outstanding{now, 0});
    send_(packet);
  }
}

void TcpEndpoint::UpdateRtt(double sample) {
  if (!have_rtt_) {
    srtt_s_ = sample;
    rttvar_s_ = sample / 2.0;
    have_rtt_ = true;
  } else {
    rttvar_s_ = 0.75 * rttvar_s_ + 0.25 * std::abs(srtt_s_ - sample);
    srtt_s_ = 0.875 * srtt_s_ + 0.125 * sample;
  }
  rto_s_ = std::clamp(srtt_s_ + 4.0 * rttvar_s_, config_.min_rto_s, kMaxRto);
}

void TcpEndpoint::OnAck(const SimPacket& packet, double now) {
  auto it = outstanding_.find(packet.seq);
  if (it == outstanding_.end())
    return;  // Already written off as lost.
  UpdateRtt(now - it->second.send_time_s);
  outstanding_.erase(it);
  last_progress_s_ = now;

  if (window_->phase() == TcpPhase::kFastRecovery) {
    if (packet.seq >= recover_seq_)
      window_->OnRecoveryExit();
  } else {
    window_->OnAck();
  }

  std::vector<std::uint64_t> lost;
  for (auto older = outstanding_.begin();
       older != outstanding_.end() && older->first < packet.seq; ++older) {
    if (++older->second.later_acks >= kDupThreshold)
      lost.push_back(older->first);
  }
  if (!lost.empty()) {
    for (std::uint64_t seq : lost)
      outstanding_.erase(seq);
    losses_ += static_cast<std::int64_t>(lost.size());
    if (window_->phase() != TcpPhase::kFastRecovery) {
      window_->OnLoss(LossKind::kTripleDuplicate);
      recover_seq_ = next_seq_;
    }
  }
  TrySend(now);
}

void TcpEndpoint::CheckTimeout(double now) {
  if (outstanding_.empty() || now - last_progress_s_ < rto_s_)
    return;
  losses_ += static_cast<std::int64_t>(outstanding_.size());
  outstanding_.clear();
  ++timeouts_;
  window_->OnLoss(LossKind::kTimeout);
  rto_s_ = std::min(rto_s_ * 2.0, kMaxRto);
  last_progress_s_ = now;
  TrySend(now);
}

}  // namespace p2pcc
