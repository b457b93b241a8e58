#include "p2pcc/sim/event_queue.h"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace p2pcc {

void EventQueue::Schedule(double time_s, Callback callback) {
  if (time_s < now_)
    throw std::logic_error("event scheduled in the past");
  heap_.push_back({time_s, next_seq_++, std::move(callback)});
  std::push_heap(heap_.begin(), heap_.end(), Later{});
}

double EventQueue::NextTime() const {
  return heap_.empty() ? std::numeric_limits<double>::infinity()
                       : heap_.front().time_s;
}

void EventQueue::RunUntil(double end_s) {
  while (!heap_.empty() && heap_.front().time_s <= end_s) {
    std::pop_heap(heap_.begin(), heap_.end(), Later{});
    Entry entry = std::move(heap_.back());
    heap_.pop_back();
    now_ = entry.time_s;
    entry.callback();
  }
  now_ = std::max(now_, end_s);
}

}  // namespace p2pcc
