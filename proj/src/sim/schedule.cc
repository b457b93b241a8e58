#include "p2pcc/sim/schedule.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace p2pcc {

PiecewiseSchedule::PiecewiseSchedule(std::vector<Step> steps)
    : steps_(std::move(steps)) {
  if (steps_.empty())
    throw std::invalid_argument("schedule has no steps");
  if (steps_.front().start_s != 0.0)
    throw std::invalid_argument("schedule must start at t = 0");
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    if (!std::isfinite(steps_[i].start_s) || !std::isfinite(steps_[i].value))
      throw std::invalid_argument("schedule values must be finite");
    if (i > 0 && steps_[i].start_s <= steps_[i - 1].start_s)
      throw std::invalid_argument("schedule steps must be strictly increasing");
  }
}

double PiecewiseSchedule::ValueAt(double t) const {
  auto it = std::upper_bound(
      steps_.begin(), steps_.end(), t,
      [](double time, const Step& step) { return time < step.start_s; });
  if (it == steps_.begin())
    return steps_.front().value;
  return std::prev(it)->value;
}

double PiecewiseSchedule::MinValue() const {
  return std::min_element(steps_.begin(), steps_.end(),
                          [](const Step& a, const Step& b) {
                            return a.value < b.value;
                          })
      ->value;
}

double PiecewiseSchedule::MaxValue() const {
  return std::max_element(steps_.begin(), steps_.end(),
                          [](const Step& a, const Step& b) {
                            return a.value < b.value;
                          })
      ->value;
}

PiecewiseSchedule PiecewiseSchedule::Shifted(double offset) const {
  std::vector<Step> shifted = steps_;
  for (auto& step : shifted)
    step.value += offset;
  return PiecewiseSchedule(std::move(shifted));
}

}  // namespace p2pcc
