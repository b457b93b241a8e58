#ifndef P2PCC_EXPERIMENTS_ANALYSIS_H_
#define P2PCC_EXPERIMENTS_ANALYSIS_H_

#include <functional>
#include <optional>

#include "p2pcc/sim/metrics_log.h"

namespace p2pcc {

using RowMetric = std::function<double(const MetricsRow&)>;

// Mean of `metric` over rows with from_s < time <= to_s; empty if none.
std::optional<double> WindowMean(const MetricsLog& log, const RowMetric& metric,
                                 double from_s, double to_s);

// Fraction of rows in (from_s, to_s] for which `pred` holds; empty if none.
std::optional<double> FractionOfRows(
    const MetricsLog& log, const std::function<bool(const MetricsRow&)>& pred,
    double from_s, double to_s);

// Longest stretch, in seconds, inside (from_s, to_s] during which the
// trailing `smoothing_s` mean of `metric` stays below `threshold`.
double LongestRunBelow(const MetricsLog& log, const RowMetric& metric,
                       double threshold, double from_s, double to_s,
                       double smoothing_s);

// Index of the named receiver or flow column; empty if absent.
std::optional<std::size_t> ReceiverIndex(const MetricsLog& log,
                                         const std::string& name);
std::optional<std::size_t> FlowIndex(const MetricsLog& log,
                                     const std::string& name);

}  // namespace p2pcc

#endif  // P2PCC_EXPERIMENTS_ANALYSIS_H_
