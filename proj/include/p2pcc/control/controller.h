#ifndef P2PCC_CONTROL_CONTROLLER_H_
#define P2PCC_CONTROL_CONTROLLER_H_

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "p2pcc/control/controller_params.h"

namespace p2pcc {

struct AckRecord {
  double arrival_s = 0.0;
  double latency_s = 0.0;
};

struct OutstandingPacket {
  double send_time_s = 0.0;
  int later_acks = 0;
};

// Per-receiver latency tracking.
struct ReceiverStats {
  ReceiverId id;
  // Lowest ack round trip seen; stands in for the path RTT.
  std::optional<double> d_min;
  // Latency of the last delivered packet when a loss was detected; stands in
  // for max queue delay + path RTT.
  std::optional<double> d_max;
  std::optional<double> last_latency;
  std::int64_t in_flight = 0;
  // Share of all unacknowledged packets that are headed to this receiver.
  double lambda_sq = 0.0;
  // Acks inside the bandwidth horizon, oldest first.
  std::deque<AckRecord> ack_history;
  // Keyed by the per-receiver sequence number.
  std::map<std::uint64_t, OutstandingPacket> outstanding;
  std::uint64_t next_seq = 0;
};

struct ControllerState {
  std::int64_t cumulative_sent = 0;
  std::int64_t cumulative_acked = 0;
  std::int64_t cumulative_lost = 0;
  std::int64_t window_w = 1;
  std::int64_t quota_u = 0;
  double est_bandwidth_pps = 0.0;
  std::optional<double> d_ref;
  // Mean queue delay of the acks that closed the last period.
  double avg_queue_delay_s = 0.0;
  std::vector<ReceiverStats> receivers;
  std::uint64_t epoch = 0;

  // Queue-delay samples gathered since the last tick.
  double interval_delay_sum_s = 0.0;
  std::int64_t interval_delay_count = 0;

  std::int64_t unknown_acks = 0;
  std::int64_t loss_events = 0;
  std::int64_t dref_recalibrations = 0;
  bool loss_since_tick = false;

  std::int64_t InFlight() const {
    return cumulative_sent - cumulative_acked - cumulative_lost;
  }
};

// Injection quota: round(gamma * (w - in_flight)), never negative.
std::int64_t ComputeSendQuota(const ControllerState& state,
                              const ControllerParams& params);

// Estimated maximum queue delay: the tightest (d_max - d_min) among
// loss-calibrated receivers, or the bootstrap offset before any loss.
double EstimateMaxQueueDelay(std::span<const ReceiverStats> receivers,
                             const ControllerParams& params);

// Queue-delay reference alpha * max queue delay. Empty when no receiver has
// a latency sample yet.
std::optional<double> ComputeDref(std::span<const ReceiverStats> receivers,
                                  const ControllerParams& params);

// Dynamic window:
//   ceil(U * sum_p share_p * (d_min_p + d_ref + T) + 1)
//     + gamma2 * (d_ref - d)
// floored at one packet. Requires state.d_ref.
std::int64_t ComputeWindow(const ControllerState& state,
                           const ControllerParams& params);

// Raw ack arrival rate over (now - t_c, now], packets per second.
double AckRate(const ControllerState& state, const ControllerParams& params,
               double now);

// Ack rate gated on a non-empty queue. When the period's mean queue delay is
// below trust_fraction * d_ref the previous estimate is kept, raised to the
// current ack rate if that is higher.
double EstimateBandwidth(const ControllerState& state,
                         const ControllerParams& params, double now);

// in_flight_p / total in flight, all zeros when nothing is in flight.
std::vector<double> LambdaSquaredShares(const ControllerState& state);

// Lower bound on w that keeps the bottleneck queue non-empty:
// u_max * (sum_p share_p * n_p + 1 / gamma).
double MinNonEmptyQueueWindow(double u_max, std::span<const double> shares,
                              std::span<const double> periods_per_receiver,
                              double gamma);

enum class AckResult {
  kAccepted,
  kUnknownPacket,
};

struct TickSnapshot {
  std::uint64_t epoch = 0;
  double time_s = 0.0;
  std::int64_t window = 0;
  std::int64_t quota = 0;
  double est_bandwidth_pps = 0.0;
  double ack_rate_pps = 0.0;
  std::optional<double> d_ref;
  double avg_queue_delay_s = 0.0;
  std::int64_t in_flight = 0;
  bool bootstrap = false;
};

// Periodic congestion controller for sequential transmissions to several
// receivers through one bottleneck. Pure state machine: the caller supplies
// all timestamps and drives ControlTick once per period.
class Controller {
 public:
  explicit Controller(ControllerParams params);

  void AddReceiver(ReceiverId id);

  // Records a packet handed to the network and returns its per-receiver
  // sequence number.
  std::uint64_t OnPacketSent(ReceiverId id, double now);

  // Duplicate or spurious acks are counted and otherwise ignored. An accepted
  // ack may declare earlier outstanding packets of the same receiver lost.
  AckResult OnAck(ReceiverId id, std::uint64_t seq, double ack_time);

  // Removes `seq` from flight and recalibrates d_max with the latency of the
  // last delivered packet. Returns false if `seq` was not outstanding.
  bool OnLoss(ReceiverId id, std::uint64_t seq,
              std::optional<double> last_success_latency);

  TickSnapshot ControlTick(double now);

  const ControllerState& state() const { return state_; }
  const ControllerParams& params() const { return params_; }
  const ReceiverStats* FindReceiver(ReceiverId id) const;

 private:
  ReceiverStats& Receiver(ReceiverId id);
  void DetectTimeouts(double now);

  ControllerParams params_;
  ControllerState state_;
};

}  // namespace p2pcc

#endif  // P2PCC_CONTROL_CONTROLLER_H_
