#ifndef P2PCC_CONTROL_CONTROLLER_PARAMS_H_
#define P2PCC_CONTROL_CONTROLLER_PARAMS_H_

#include <compare>
#include <cstdint>

namespace p2pcc {

// Identifies one receiver peer of the sender.
struct ReceiverId {
  std::uint32_t value = 0;

  friend auto operator<=>(const ReceiverId&, const ReceiverId&) = default;
};

// Tunables of the periodic controller. Times are seconds, rates are packets
// per second unless stated otherwise.
struct ControllerParams {
  // Gain applied to the window deficit when computing the per-period quota.
  // Must lie in (0, 1].
  double gamma = 0.8;
  // Queue-delay correction gain of the dynamic window, packets per second.
  double gamma2 = 200.0;
  // Fraction of the estimated maximum queue delay used as the target.
  double alpha = 0.75;
  double period_s = 0.05;
  // Ack-rate averaging horizon used by the bandwidth estimate.
  double bw_window_s = 1.0;
  // Maximum queue delay assumed until the first loss calibrates it.
  double initial_qmax_offset_s = 0.1;
  // 750-byte packets.
  double packet_size_bits = 6000.0;

  // The bandwidth estimate is refreshed only while the mean queue delay of
  // the period is at least this fraction of the reference.
  double trust_fraction = 0.25;
  // Quota granted per period before any acknowledgement has been seen.
  std::int64_t bootstrap_quota = 2;
  // Later acks from the same receiver that declare an outstanding packet lost.
  int reorder_threshold = 3;
  // Loss timeout, as a multiple of (d_min + estimated max queue delay).
  double timeout_factor = 2.0;

  // Throws std::invalid_argument naming the first violated constraint.
  void Validate() const;
};

}  // namespace p2pcc

#endif  // P2PCC_CONTROL_CONTROLLER_PARAMS_H_
