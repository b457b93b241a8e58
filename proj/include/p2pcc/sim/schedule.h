#ifndef P2PCC_SIM_SCHEDULE_H_
#define P2PCC_SIM_SCHEDULE_H_

#include <vector>

namespace p2pcc {

// Piecewise-constant function of time. Each step holds from its start until
// the next step's start; the first step must start at t = 0.
class PiecewiseSchedule {
 public:
  struct Step {
    double start_s = 0.0;
    double value = 0.0;
  };

  PiecewiseSchedule() : steps_{{0.0, 0.0}} {}
  // Throws std::invalid_argument if steps are empty, unsorted, or do not
  // start at zero.
  explicit PiecewiseSchedule(std::vector<Step> steps);

  static PiecewiseSchedule Constant(double value) {
    return PiecewiseSchedule({{0.0, value}});
  }

  double ValueAt(double t) const;
  double MinValue() const;
  double MaxValue() const;
  // Returns a copy with `offset` added to every value.
  PiecewiseSchedule Shifted(double offset) const;

  const std::vector<Step>& steps() const { return steps_; }

 private:
  std::vector<Step> steps_;
};

}  // namespace p2pcc

#endif  // P2PCC_SIM_SCHEDULE_H_
