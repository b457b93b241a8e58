#ifndef P2PCC_SIM_EVENT_QUEUE_H_
#define P2PCC_SIM_EVENT_QUEUE_H_

#include <cstdint>
#include <functional>
#include <vector>

namespace p2pcc {

// Pending events keyed by (time, insertion sequence). Ties on time pop in
// insertion order, so a run is fully determined by the order of Schedule()
// calls.
class EventQueue {
 public:
  using Callback = std::function<void()>;

  void Schedule(double time_s, Callback callback);

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  double NextTime() const;
  double now() const { return now_; }

  // Runs every event with time <= end_s, including ones scheduled while
  // running. Leaves now() at end_s.
  void RunUntil(double end_s);

 private:
  struct Entry {
    double time_s;
    std::uint64_t seq;
    Callback callback;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.time_s != b.time_s)
        return a.time_s > b.time_s;
      return a.seq > b.seq;
    }
  };

  std::vector<Entry> heap_;
  std::uint64_t next_seq_ = 0;
  double now_ = 0.0;
};

}  // namespace p2pcc

#endif  // P2PCC_SIM_EVENT_QUEUE_H_
