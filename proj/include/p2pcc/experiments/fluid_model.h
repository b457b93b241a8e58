#ifndef P2PCC_EXPERIMENTS_FLUID_MODEL_H_
#define P2PCC_EXPERIMENTS_FLUID_MODEL_H_

#include <cstdint>
#include <string>
#include <vector>

namespace p2pcc {

// Period-level model of one sender feeding one bottleneck. Traffic served in
// period j for receiver p is acknowledged at the start of period
// j + delay_periods[p] + 1; a fixed fraction shares[p] of all traffic goes to
// receiver p. The sender is always backlogged.
struct FluidConfig {
  double gamma = 1.0;
  // Window per period; a single value is used for every period.
  std::vector<double> window;
  std::vector<double> shares;
  std::vector<int> delay_periods;
  // Packets the bottleneck can serve in each period; the last value repeats.
  std::vector<double> service_capacity;
  int periods = 1000;

  // Throws std::invalid_argument on inconsistent input.
  void Validate() const;
  double WindowAt(int l) const;
  double CapacityAt(int l) const;
};

struct FluidTrace {
  // queue[l] is the occupancy at the start of period l, l = 0..periods.
  std::vector<double> queue;
  // w - queue[l], propagated directly so that values just below the window
  // are not lost to cancellation.
  std::vector<double> window_slack;
  std::vector<double> injected;
  std::vector<double> served;
  std::vector<double> acked;
  // Largest gap between the direct recursion and its closed form.
  double max_closed_form_error = 0.0;
};

// Iterates u(l) = max(0, gamma * (w - in_flight)), h(l) = min(cap, y + u),
// y(l+1) = y + u - h from an empty queue.
FluidTrace RunFluidRecursion(const FluidConfig& config);

// w - y(l+1) = (1 - gamma)(w - y(l)) + gamma * sum_p share_p *
// sum_{j=l-n_p}^{l-1} h(j) + h(l), for a fixed window and unclamped quota.
double ClosedFormNextQueue(const FluidConfig& config, const FluidTrace& trace,
                           int l);

struct PropertyViolation {
  int trial = 0;
  int period = 0;
  double queue = 0.0;
  double window = 0.0;
  std::string detail;
};

struct PropertyReport {
  std::string property;
  int trials = 0;
  std::int64_t periods_checked = 0;
  double max_closed_form_error = 0.0;
  std::vector<PropertyViolation> violations;

  bool ok() const { return violations.empty(); }
};

inline constexpr int kPropertyPeriods = 1000;
// Direct and closed-form recursions must agree to this many packets.
inline constexpr double kClosedFormTolerance = 1e-6;

// Random gamma in (0, 1], 1-5 receivers, delays of 0-10 periods, random
// bounded service and a fixed window: the queue must stay strictly below w.
PropertyReport VerifyQueueUpperBound(int trials, std::uint64_t seed,
                                     int periods = kPropertyPeriods);

// Same sampling, with capacity at most u_max per period and w one packet
// above MinNonEmptyQueueWindow: the queue must stay positive after the
// longest feedback delay has elapsed (l > n_max + 1).
PropertyReport VerifyQueuePositivity(int trials, std::uint64_t seed,
                                     int periods = kPropertyPeriods);

}  // namespace p2pcc

#endif  // P2PCC_EXPERIMENTS_FLUID_MODEL_H_
