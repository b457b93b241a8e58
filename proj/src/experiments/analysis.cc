#include "p2pcc/experiments/analysis.h"

#include <algorithm>
#include <deque>

namespace p2pcc {

namespace {

std::optional<std::size_t> IndexOf(const std::vector<std::string>& names,
                                   const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end())
    return std::nullopt;
  return static_cast<std::size_t>(it - names.begin());
}

bool InWindow(double t, double from_s, double to_s) {
  return t > from_s && t <= to_s;
}

}  // namespace

std::optional<double> WindowMean(const MetricsLog& log, const RowMetric& metric,
                                 double from_s, double to_s) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& row : log.rows) {
    if (!InWindow(row.time_s, from_s, to_s))
      continue;
    sum += metric(row);
    ++n;
  }
  if (n == 0)
    return std::nullopt;
  return sum / static_cast<double>(n);
}

std::optional<double> FractionOfRows(
    const MetricsLog& log, const std::function<bool(const MetricsRow&)>& pred,
    double from_s, double to_s) {
  std::size_t hits = 0;
  std::size_t n = 0;
  for (const auto& row : log.rows) {
    if (!InWindow(row.time_s, from_s, to_s))
      continue;
    hits += pred(row) ? 1 : 0;
    ++n;
  }
  if (n == 0)
    return std::nullopt;
  return static_cast<double>(hits) / static_cast<double>(n);
}

double LongestRunBelow(const MetricsLog& log, const RowMetric& metric,
                       double threshold, double from_s, double to_s,
                       double smoothing_s) {
  std::deque<std::pair<double, double>> recent;
  double sum = 0.0;
  double longest = 0.0;
  bool in_run = false;
  double run_start = 0.0;
  double prev_time = 0.0;
  for (const auto& row : log.rows) {
    const double v = metric(row);
    recent.emplace_back(row.time_s, v);
    sum += v;
    // The newest sample always counts, so zero smoothing means no averaging.
    while (recent.size() > 1 &&
           recent.front().first <= row.time_s - smoothing_s) {
      sum -= recent.front().second;
      recent.pop_front();
    }
    if (!InWindow(row.time_s, from_s, to_s)) {
      prev_time = row.time_s;
      continue;
    }
    const double mean = sum / static_cast<double>(recent.size());
    if (mean < threshold) {
      // A run covers the periods that end at its rows.
      if (!in_run) {
        in_run = true;
        run_start = std::max(prev_time, from_s);
      }
      longest = std::max(longest, row.time_s - run_start);
    } else {
      in_run = false;
    }
    prev_time = row.time_s;
  }
  return longest;
}

std::optional<std::size_t> ReceiverIndex(const MetricsLog& log,
                                         const std::string& name) {
  return IndexOf(log.receiver_names, name);
}

std::optional<std::size_t> FlowIndex(const MetricsLog& log,
                                     const std::string& name) {
  return IndexOf(log.flow_names, name);
}

}  // namespace p2pcc
