#include "p2pcc/sim/delay_link.h"

#include <algorithm>
#include <stdexcept>

namespace p2pcc {

DelayLink::DelayLink(ReceiverId receiver, LinkDirection direction,
                     PiecewiseSchedule latency_s)
    : receiver_(receiver),
      direction_(direction),
      latency_s_(std::move(latency_s)) {
  if (latency_s_.MinValue() < 0.0)
    throw std::invalid_argument("link latency must be non-negative");
}

double DelayLink::Transit(double now) {
  const double arrival = std::max(now + latency_s_.ValueAt(now),
                                  last_arrival_s_);
  last_arrival_s_ = arrival;
  return arrival;
}

}  // namespace p2pcc
