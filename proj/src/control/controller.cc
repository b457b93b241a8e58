#include "p2pcc/control/controller.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace p2pcc {

namespace {

// Guards ceil() against values that are integral up to rounding noise.
constexpr double kCeilSlack = 1e-9;

// Timeout base used before any receiver has produced a latency sample.
constexpr double kUnknownRttTimeoutBase = 1.0;

std::int64_t RoundHalfUp(double x) {
  return static_cast<std::int64_t>(std::floor(x + 0.5));
}

void TrimHistory(std::deque<AckRecord>& history, double horizon_start) {
  while (!history.empty() && history.front().arrival_s <= horizon_start)
    history.pop_front();
}

std::optional<double> LargestDmin(std::span<const ReceiverStats> receivers) {
  std::optional<double> largest;
  for (const auto& r : receivers) {
    if (r.d_min && (!largest || *r.d_min > *largest))
      largest = r.d_min;
  }
  return largest;
}

}  // namespace

void ControllerParams::Validate() const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("controller params: " + what);
  };
  if (!(gamma > 0.0 && gamma <= 1.0))
    fail("gamma must be in (0, 1]");
  if (!(gamma2 >= 0.0))
    fail("gamma2 must be non-negative");
  if (!(alpha > 0.0 && alpha < 1.0))
    fail("alpha must be in (0, 1)");
  if (!(period_s > 0.0))
    fail("period_T must be positive");
  if (!(bw_window_s >= period_s))
    fail("bw_window_tc must be at least period_T");
  if (!(initial_qmax_offset_s > 0.0))
    fail("initial_qmax_offset must be positive");
  if (!(packet_size_bits > 0.0))
    fail("packet_size_s must be positive");
  if (!(trust_fraction >= 0.0 && trust_fraction <= 1.0))
    fail("trust_fraction must be in [0, 1]");
  if (bootstrap_quota < 1)
    fail("bootstrap_quota must be at least 1");
  if (reorder_threshold < 1)
    fail("reorder_threshold must be at least 1");
  if (!(timeout_factor > 0.0))
    fail("timeout_factor must be positive");
}

std::int64_t ComputeSendQuota(const ControllerState& state,
                              const ControllerParams& params) {
  const double deficit =
      static_cast<double>(state.window_w - state.InFlight());
  return std::max<std::int64_t>(0, RoundHalfUp(params.gamma * deficit));
}

double EstimateMaxQueueDelay(std::span<const ReceiverStats> receivers,
                             const ControllerParams& params) {
  std::optional<double> tightest;
  for (const auto& r : receivers) {
    if (!r.d_max || !r.d_min)
      continue;
    const double q = std::max(0.0, *r.d_max - *r.d_min);
    if (!tightest || q < *tightest)
      tightest = q;
  }
  return tightest.value_or(params.initial_qmax_offset_s);
}

std::optional<double> ComputeDref(std::span<const ReceiverStats> receivers,
                                  const ControllerParams& params) {
  const bool any_sample = std::any_of(
      receivers.begin(), receivers.end(),
      [](const ReceiverStats& r) { return r.d_min.has_value(); });
  if (!any_sample)
    return std::nullopt;
  return params.alpha * EstimateMaxQueueDelay(receivers, params);
}

std::int64_t ComputeWindow(const ControllerState& state,
                           const ControllerParams& params) {
  const double d_ref = state.d_ref.value_or(0.0);
  // A receiver with packets in flight but no sample yet borrows the largest
  // known base latency.
  const double fallback_dmin = LargestDmin(state.receivers).value_or(0.0);

  double weighted_delay = 0.0;
  for (const auto& r : state.receivers) {
    if (r.lambda_sq <= 0.0)
      continue;
    const double d_min = r.d_min.value_or(fallback_dmin);
    weighted_delay += r.lambda_sq * (d_min + d_ref + params.period_s);
  }
  const double first =
      std::ceil(state.est_bandwidth_pps * weighted_delay + 1.0 - kCeilSlack);
  const double correction =
      params.gamma2 * (d_ref - state.avg_queue_delay_s);
  const std::int64_t w =
      static_cast<std::int64_t>(first) + RoundHalfUp(correction);
  return std::max<std::int64_t>(1, w);
}

double AckRate(const ControllerState& state, const ControllerParams& params,
               double now) {
  const double horizon_start = now - params.bw_window_s;
  std::int64_t count = 0;
  for (const auto& r : state.receivers) {
    for (const auto& ack : r.ack_history) {
      if (ack.arrival_s > horizon_start && ack.arrival_s <= now)
        ++count;
    }
  }
  return static_cast<double>(count) / params.bw_window_s;
}

double EstimateBandwidth(const ControllerState& state,
                         const ControllerParams& params, double now) {
  const double measured = AckRate(state, params, now);
  const bool queue_loaded =
      state.d_ref &&
      state.avg_queue_delay_s >= params.trust_fraction * *state.d_ref;
  if (queue_loaded)
    return measured;
  return std::max(state.est_bandwidth_pps, measured);
}

std::vector<double> LambdaSquaredShares(const ControllerState& state) {
  std::vector<double> shares(state.receivers.size(), 0.0);
  std::int64_t total = 0;
  for (const auto& r : state.receivers)
    total += r.in_flight;
  if (total <= 0)
    return shares;
  for (std::size_t i = 0; i < state.receivers.size(); ++i) {
    shares[i] = static_cast<double>(state.receivers[i].in_flight) /
                static_cast<double>(total);
  }
  return shares;
}

double MinNonEmptyQueueWindow(double u_max, std::span<const double> shares,
                              std::span<const double> periods_per_receiver,
                              double gamma) {
  if (shares.size() != periods_per_receiver.size())
    throw std::invalid_argument("shares and periods differ in length");
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::invalid_argument("gamma must be in (0, 1]");
  double weighted = 0.0;
  for (std::size_t p = 0; p < shares.size(); ++p)
    weighted += shares[p] * periods_per_receiver[p];
  return u_max * (weighted + 1.0 / gamma);
}

Controller::Controller(ControllerParams params) : params_(params) {
  params_.Validate();
}

void Controller::AddReceiver(ReceiverId id) {
  if (FindReceiver(id))
    throw std::invalid_argument("duplicate receiver id " +
                                std::to_string(id.value));
  ReceiverStats stats;
  stats.id = id;
  state_.receivers.push_back(std::move(stats));
}

const ReceiverStats* Controller::FindReceiver(ReceiverId id) const {
  for (const auto& r : state_.receivers) {
    if (r.id == id)
      return &r;
  }
  return nullptr;
}

ReceiverStats& Controller::Receiver(ReceiverId id) {
  for (auto& r : state_.receivers) {
    if (r.id == id)
      return r;
  }
  throw std::invalid_argument("unknown receiver id " +
                              std::to_string(id.value));
}

std::uint64_t Controller::OnPacketSent(ReceiverId id, double now) {
  ReceiverStats& r = Receiver(id);
  const std::uint64_t seq = r.next_seq++;
  r.outstanding.emplace(seq, OutstandingPacket{now, 0});
  ++r.in_flight;
  ++state_.cumulative_sent;
  return seq;
}

AckResult Controller::OnAck(ReceiverId id, std::uint64_t seq,
                            double ack_time) {
  ReceiverStats& r = Receiver(id);
  auto it = r.outstanding.find(seq);
  if (it == r.outstanding.end()) {
    ++state_.unknown_acks;
    return AckResult::kUnknownPacket;
  }
  const double latency = ack_time - it->second.send_time_s;
  r.outstanding.erase(it);
  --r.in_flight;
  ++state_.cumulative_acked;

  if (!r.d_min || latency < *r.d_min)
    r.d_min = latency;
  r.last_latency = latency;
  r.ack_history.push_back({ack_time, latency});
  TrimHistory(r.ack_history, ack_time - params_.bw_window_s);

  state_.interval_delay_sum_s += latency - *r.d_min;
  ++state_.interval_delay_count;

  // Older packets overtaken by this ack.
  std::vector<std::uint64_t> lost;
  for (auto older = r.outstanding.begin();
       older != r.outstanding.end() && older->first < seq; ++older) {
    if (++older->second.later_acks >= params_.reorder_threshold)
      lost.push_back(older->first);
  }
  for (std::uint64_t s : lost)
    OnLoss(id, s, latency);
  return AckResult::kAccepted;
}

bool Controller::OnLoss(ReceiverId id, std::uint64_t seq,
                        std::optional<double> last_success_latency) {
  ReceiverStats& r = Receiver(id);
  auto it = r.outstanding.find(seq);
  if (it == r.outstanding.end())
    return false;
  r.outstanding.erase(it);
  --r.in_flight;
  ++state_.cumulative_lost;
  ++state_.loss_events;
  if (last_success_latency) {
    r.d_max = *last_success_latency;
    state_.loss_since_tick = true;
  }
  return true;
}

void Controller::DetectTimeouts(double now) {
  const double q_max = EstimateMaxQueueDelay(state_.receivers, params_);
  const std::optional<double> fallback = LargestDmin(state_.receivers);
  for (auto& r : state_.receivers) {
    const std::optional<double> base = r.d_min ? r.d_min : fallback;
    const double timeout =
        base ? params_.timeout_factor * (*base + q_max)
             : params_.timeout_factor * kUnknownRttTimeoutBase;
    std::vector<std::uint64_t> expired;
    for (const auto& [seq, pkt] : r.outstanding) {
      if (now - pkt.send_time_s > timeout)
        expired.push_back(seq);
    }
    for (std::uint64_t seq : expired)
      OnLoss(r.id, seq, r.last_latency);
  }
}

TickSnapshot Controller::ControlTick(double now) {
  DetectTimeouts(now);

  state_.avg_queue_delay_s =
      state_.interval_delay_count > 0
          ? state_.interval_delay_sum_s /
                static_cast<double>(state_.interval_delay_count)
          : 0.0;
  state_.interval_delay_sum_s = 0.0;
  state_.interval_delay_count = 0;

  for (auto& r : state_.receivers)
    TrimHistory(r.ack_history, now - params_.bw_window_s);
  const double ack_rate = AckRate(state_, params_, now);
  state_.est_bandwidth_pps = EstimateBandwidth(state_, params_, now);

  TickSnapshot snap;
  snap.epoch = state_.epoch;
  snap.time_s = now;
  snap.ack_rate_pps = ack_rate;
  snap.avg_queue_delay_s = state_.avg_queue_delay_s;
  snap.est_bandwidth_pps = state_.est_bandwidth_pps;

  const std::optional<double> d_ref = ComputeDref(state_.receivers, params_);
  if (!d_ref) {
    // Nothing acknowledged yet: keep the loop alive with a fixed floor.
    state_.quota_u = params_.bootstrap_quota;
    ++state_.epoch;
    snap.window = state_.window_w;
    snap.quota = state_.quota_u;
    snap.in_flight = state_.InFlight();
    snap.bootstrap = true;
    return snap;
  }

  if (state_.loss_since_tick && state_.d_ref &&
      std::abs(*d_ref - *state_.d_ref) > 1e-12) {
    ++state_.dref_recalibrations;
  }
  state_.loss_since_tick = false;
  state_.d_ref = d_ref;

  const std::vector<double> shares = LambdaSquaredShares(state_);
  for (std::size_t i = 0; i < shares.size(); ++i)
    state_.receivers[i].lambda_sq = shares[i];

  state_.window_w = ComputeWindow(state_, params_);
  state_.quota_u = ComputeSendQuota(state_, params_);
  ++state_.epoch;

  snap.window = state_.window_w;
  snap.quota = state_.quota_u;
  snap.d_ref = state_.d_ref;
  snap.in_flight = state_.InFlight();
  return snap;
}

}  // namespace p2pcc
