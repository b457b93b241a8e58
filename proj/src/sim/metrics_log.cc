#include "p2pcc/sim/metrics_log.h"

namespace p2pcc {

std::vector<std::string> MetricsLog::ColumnNames() const {
  std::vector<std::string> names = {"time",          "w_kbits",
                                    "u_kbits",       "ack_rate_kbps",
                                    "U_est_kbps",    "d_ref_ms"};
  for (const auto& r : receiver_names)
    names.push_back("dRTT_" + r + "_ms");
  names.insert(names.end(), {"rtt_avg_ms", "rtt_ref_ms", "queue_packets",
                             "cumulative_drops"});
  for (const auto& f : flow_names)
    names.push_back("throughput_" + f + "_kbps");
  names.insert(names.end(), {"path_rtt_ms", "capacity_kbps", "loss_events",
                             "dref_recalibrations"});
  return names;
}

std::vector<double> MetricsLog::RowValues(const MetricsRow& row) const {
  std::vector<double> values = {row.time_s,        row.w_kbits,
                                row.u_kbits,       row.ack_rate_kbps,
                                row.u_est_kbps,    row.d_ref_ms};
  values.insert(values.end(), row.drtt_ms.begin(), row.drtt_ms.end());
  values.insert(values.end(),
                {row.rtt_avg_ms, row.rtt_ref_ms, row.queue_packets,
                 static_cast<double>(row.cumulative_drops)});
  values.insert(values.end(), row.throughput_kbps.begin(),
                row.throughput_kbps.end());
  values.insert(values.end(),
                {row.path_rtt_ms, row.capacity_kbps,
                 static_cast<double>(row.loss_events),
                 static_cast<double>(row.dref_recalibrations)});
  return values;
}

}  // namespace p2pcc
