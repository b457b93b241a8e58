#ifndef P2PCC_SIM_DELAY_LINK_H_
#define P2PCC_SIM_DELAY_LINK_H_

#include <limits>

#include "p2pcc/control/controller_params.h"
#include "p2pcc/sim/schedule.h"

namespace p2pcc {

enum class LinkDirection {
  kForward,
  kAck,
};

// Pure propagation delay with a piecewise-constant latency. A latency change
// applies to packets entering after it; delivery stays FIFO, so a packet
// never overtakes one that entered earlier.
class DelayLink {
 public:
  DelayLink(ReceiverId receiver, LinkDirection direction,
            PiecewiseSchedule latency_s);

  // Arrival time of a packet entering at `now`.
  double Transit(double now);
  double LatencyAt(double t) const { return latency_s_.ValueAt(t); }

  ReceiverId receiver() const { return receiver_; }
  LinkDirection direction() const { return direction_; }

 private:
  ReceiverId receiver_;
  LinkDirection direction_;
  PiecewiseSchedule latency_s_;
  double last_arrival_s_ = -std::numeric_limits<double>::infinity();
};

}  // namespace p2pcc

#endif  // P2PCC_SIM_DELAY_LINK_H_
