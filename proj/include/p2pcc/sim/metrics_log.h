#ifndef P2PCC_SIM_METRICS_LOG_H_
#define P2PCC_SIM_METRICS_LOG_H_

#include <cstdint>
#include <string>
#include <vector>

namespace p2pcc {

// One row per control period, summarising the period that ends at `time_s`.
// Kbit fields are packet counts times the packet size over 1000.
struct MetricsRow {
  double time_s = 0.0;
  double w_kbits = 0.0;
  double u_kbits = 0.0;
  double ack_rate_kbps = 0.0;
  double u_est_kbps = 0.0;
  double d_ref_ms = 0.0;
  // Per receiver: mean (measured latency - configured path RTT) of the acks
  // received in the period. Carries the previous value when none arrived.
  std::vector<double> drtt_ms;
  double rtt_avg_ms = 0.0;
  double rtt_ref_ms = 0.0;
  double queue_packets = 0.0;
  std::int64_t cumulative_drops = 0;
  // Per flow, bits served by the bottleneck during the period.
  std::vector<double> throughput_kbps;

  double path_rtt_ms = 0.0;
  double capacity_kbps = 0.0;
  std::int64_t loss_events = 0;
  std::int64_t dref_recalibrations = 0;
};

struct MetricsLog {
  std::vector<std::string> receiver_names;
  std::vector<std::string> flow_names;
  std::vector<MetricsRow> rows;

  std::vector<std::string> ColumnNames() const;
  // Row values in ColumnNames() order.
  std::vector<double> RowValues(const MetricsRow& row) const;
};

}  // namespace p2pcc

#endif  // P2PCC_SIM_METRICS_LOG_H_
