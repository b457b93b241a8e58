#include "p2pcc/sim/scenario_config.h"

#include <cmath>
#include <set>
#include <stdexcept>

#include "p2pcc/control/controller.h"

namespace p2pcc {

namespace {

void Require(bool ok, const std::string& what) {
  if (!ok)
    throw std::invalid_argument("scenario: " + what);
}

}  // namespace

const char* TcpVariantName(TcpVariant variant) {
  switch (variant) {
    case TcpVariant::kReno:
      return "reno";
    case TcpVariant::kBic:
      return "bic";
  }
  return "unknown";
}

void ScenarioConfig::Validate() const {
  Require(duration_s > 0.0 && std::isfinite(duration_s),
          "duration must be positive");
  controller.Validate();
  Require(!receivers.empty(), "receiver set is empty");

  std::set<std::uint32_t> ids;
  std::set<std::string> names;
  for (const auto& r : receivers) {
    Require(ids.insert(r.id.value).second,
            "duplicate receiver id " + std::to_string(r.id.value));
    Require(!r.name.empty(), "receiver name is empty");
    Require(names.insert(r.name).second, "duplicate receiver name " + r.name);
    Require(r.forward_latency_s.MinValue() >= 0.0,
            "negative forward latency for " + r.name);
    Require(r.ack_latency_s.MinValue() >= 0.0,
            "negative ack latency for " + r.name);
  }
  Require(access_latency_s.MinValue() >= 0.0, "negative access latency");
  Require(bottleneck_rate_bps.MinValue() > 0.0,
          "bottleneck rate must stay positive");
  Require(p2p_start_s >= 0.0 && p2p_start_s < duration_s,
          "p2p start must lie inside the run");
  // Equal start and stop leave the P2P sender idle for the whole run.
  Require(P2pStop() >= p2p_start_s, "p2p stop must not precede its start");
  Require(block_source.block_size_packets >= 1, "block size must be >= 1");
  if (buffer_capacity_packets)
    Require(*buffer_capacity_packets >= 1, "buffer must hold a packet");

  std::set<std::string> flow_names{"p2p"};
  for (const auto& flow : competing_flows) {
    Require(!flow.name.empty(), "competing flow name is empty");
    Require(flow_names.insert(flow.name).second,
            "duplicate flow name " + flow.name);
    Require(ids.count(flow.receiver.value) == 1,
            "flow " + flow.name + " targets an unknown receiver");
    Require(flow.start_s >= 0.0 && flow.stop_s > flow.start_s,
            "flow " + flow.name + " needs 0 <= start < stop");
    Require(flow.max_window_packets >= 1.0,
            "flow " + flow.name + " window cap must be >= 1");
    Require(flow.initial_ssthresh >= 2.0,
            "flow " + flow.name + " ssthresh must be >= 2");
    Require(flow.min_rto_s > 0.0, "flow " + flow.name + " min RTO must be > 0");
  }
}

double ScenarioConfig::MaxPacketsPerPeriod() const {
  return std::ceil(bottleneck_rate_bps.MaxValue() * controller.period_s /
                   controller.packet_size_bits);
}

double ScenarioConfig::PathRtt(const ReceiverConfig& receiver,
                               double t) const {
  return access_latency_s.ValueAt(t) + receiver.forward_latency_s.ValueAt(t) +
         receiver.ack_latency_s.ValueAt(t);
}

std::size_t ScenarioConfig::EffectiveBufferCapacity() const {
  if (buffer_capacity_packets)
    return *buffer_capacity_packets;
  const double share = 1.0 / static_cast<double>(receivers.size());
  std::vector<double> shares(receivers.size(), share);
  std::vector<double> periods;
  for (const auto& r : receivers) {
    const double worst_rtt = access_latency_s.MaxValue() +
                             r.forward_latency_s.MaxValue() +
                             r.ack_latency_s.MaxValue();
    periods.push_back(worst_rtt / controller.period_s);
  }
  const double bound = MinNonEmptyQueueWindow(MaxPacketsPerPeriod(), shares,
                                              periods, controller.gamma);
  return static_cast<std::size_t>(std::ceil(2.0 * bound));
}

}  // namespace p2pcc
