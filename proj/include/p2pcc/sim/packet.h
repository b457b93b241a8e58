#ifndef P2PCC_SIM_PACKET_H_
#define P2PCC_SIM_PACKET_H_

#include <cstdint>

#include "p2pcc/control/controller_params.h"

namespace p2pcc {

using FlowId = std::uint32_t;

// Flow 0 is always the P2P sender; competing flows follow in config order.
inline constexpr FlowId kP2pFlow = 0;

struct SimPacket {
  FlowId flow = kP2pFlow;
  // Sequence number within the flow (per receiver for the P2P flow).
  std::uint64_t seq = 0;
  ReceiverId receiver;
  std::uint64_t block_id = 0;
  double size_bits = 0.0;
  double send_time_s = 0.0;
  double enqueue_time_s = 0.0;
  double departure_time_s = 0.0;
  // Sum of the propagation delays assigned on each leg; the RTT this packet
  // would have seen through an empty queue.
  double base_rtt_s = 0.0;
};

}  // namespace p2pcc

#endif  // P2PCC_SIM_PACKET_H_
