#include "p2pcc/sim/bottleneck_queue.h"

#include <stdexcept>

namespace p2pcc {

BottleneckQueue::BottleneckQueue(std::size_t capacity_packets,
                                 PiecewiseSchedule rate_bps)
    : capacity_(capacity_packets), rate_bps_(std::move(rate_bps)) {
  if (capacity_ == 0)
    throw std::invalid_argument("bottleneck buffer must hold a packet");
  if (rate_bps_.MinValue() <= 0.0)
    throw std::invalid_argument("bottleneck rate must stay positive");
}

EnqueueResult BottleneckQueue::Enqueue(SimPacket packet, double now) {
  if (packets_.size() >= capacity_) {
    ++dropped_;
    return EnqueueResult::kDropped;
  }
  packet.enqueue_time_s = now;
  packets_.push_back(packet);
  ++enqueued_;
  return EnqueueResult::kAccepted;
}

std::optional<double> BottleneckQueue::ServiceNext(double now) {
  if (busy_ || packets_.empty())
    return std::nullopt;
  busy_ = true;
  busy_until_ = now + packets_.front().size_bits / rate_bps_.ValueAt(now);
  return busy_until_;
}

SimPacket BottleneckQueue::CompleteService(double now) {
  if (!busy_ || packets_.empty())
    throw std::logic_error("no packet in service");
  SimPacket packet = packets_.front();
  packets_.pop_front();
  packet.departure_time_s = now;
  busy_ = false;
  ++served_;
  return packet;
}

}  // namespace p2pcc
