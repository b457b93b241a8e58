#ifndef P2PCC_SIM_BOTTLENECK_QUEUE_H_
#define P2PCC_SIM_BOTTLENECK_QUEUE_H_

#include <cstdint>
#include <deque>
#include <optional>

#include "p2pcc/sim/packet.h"
#include "p2pcc/sim/schedule.h"

namespace p2pcc {

enum class EnqueueResult {
  kAccepted,
  kDropped,
};

// Drop-tail FIFO with a time-varying service rate in bits per second. The
// owner drives service: ServiceNext() starts the head packet and reports when
// it will depart; CompleteService() pops it at that time.
class BottleneckQueue {
 public:
  BottleneckQueue(std::size_t capacity_packets, PiecewiseSchedule rate_bps);

  EnqueueResult Enqueue(SimPacket packet, double now);

  // Starts serving the head packet if the server is idle and the queue is
  // non-empty. Returns the departure time of the packet entering service.
  std::optional<double> ServiceNext(double now);

  // Pops the packet in service. Must be called at the time returned by
  // ServiceNext().
  SimPacket CompleteService(double now);

  std::size_t occupancy() const { return packets_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool busy() const { return busy_; }
  double busy_until() const { return busy_until_; }
  double RateAt(double t) const { return rate_bps_.ValueAt(t); }

  std::int64_t enqueued() const { return enqueued_; }
  std::int64_t served() const { return served_; }
  std::int64_t dropped() const { return dropped_; }

 private:
  std::size_t capacity_;
  PiecewiseSchedule rate_bps_;
  std::deque<SimPacket> packets_;
  bool busy_ = false;
  double busy_until_ = 0.0;
  std::int64_t enqueued_ = 0;
  std::int64_t served_ = 0;
  std::int64_t dropped_ = 0;
};

}  // namespace p2pcc

#endif  // P2PCC_SIM_BOTTLENECK_QUEUE_H_
