#ifndef P2PCC_SIM_SCENARIO_CONFIG_H_
#define P2PCC_SIM_SCENARIO_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "p2pcc/control/controller_params.h"
#include "p2pcc/sim/schedule.h"

namespace p2pcc {

struct ReceiverConfig {
  ReceiverId id;
  std::string name;
  // Router -> receiver one-way delay.
  PiecewiseSchedule forward_latency_s;
  // Receiver -> sender one-way delay of the ack path.
  PiecewiseSchedule ack_latency_s;
};

enum class TcpVariant {
  kReno,
  kBic,
};

struct CompetingFlowConfig {
  std::string name;
  TcpVariant variant = TcpVariant::kReno;
  ReceiverId receiver;
  double start_s = 0.0;
  double stop_s = 0.0;
  double initial_ssthresh = 1e9;
  // Receiver advertised window, packets.
  double max_window_packets = 1e9;
  double min_rto_s = 0.2;
};

struct BlockSourceConfig {
  std::int64_t block_size_packets = 40;
  // Empty means an endless backlog.
  std::optional<std::uint64_t> backlog_blocks;
};

struct ScenarioConfig {
  std::string name;
  double duration_s = 100.0;
  std::uint64_t seed = 1;
  ControllerParams controller;

  double p2p_start_s = 0.0;
  // Empty means the P2P sender runs until the end.
  std::optional<double> p2p_stop_s;

  // Sender -> router one-way delay, shared by every flow.
  PiecewiseSchedule access_latency_s;
  std::vector<ReceiverConfig> receivers;

  PiecewiseSchedule bottleneck_rate_bps;
  // Empty means twice the non-empty-queue window bound of the topology.
  std::optional<std::size_t> buffer_capacity_packets;

  BlockSourceConfig block_source;
  std::vector<CompetingFlowConfig> competing_flows;

  // Throws std::invalid_argument with the first violation found.
  void Validate() const;

  std::size_t EffectiveBufferCapacity() const;
  // Largest packet count the bottleneck can serve in one control period.
  double MaxPacketsPerPeriod() const;
  // access + forward + ack delay of a receiver at time t.
  double PathRtt(const ReceiverConfig& receiver, double t) const;
  double P2pStop() const { return p2p_stop_s.value_or(duration_s); }
};

const char* TcpVariantName(TcpVariant variant);

}  // namespace p2pcc

#endif  // P2PCC_SIM_SCENARIO_CONFIG_H_
