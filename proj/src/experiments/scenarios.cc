#include "p2pcc/experiments/scenarios.h"

#include <random>

namespace p2pcc {

namespace {

constexpr double kMbps = 1e6;
constexpr double kMs = 1e-3;
constexpr double kSenderRouterLatency = 20 * kMs;
constexpr double kResampleInterval = 10.0;
constexpr double kStaticRate = 4 * kMbps;
constexpr double kDuration = 100.0;
// Router-receiver delays of the four-receiver topology.
constexpr double kFourReceiverDelays[] = {12 * kMs, 22 * kMs, 7 * kMs,
                                          16 * kMs};
// Small enough that a capacity drop overflows the queue.
constexpr std::size_t kDynamicBufferPackets = 60;
// Receive window of the competing TCP flows, packets (30 KB).
constexpr double kTcpReceiveWindowPackets = 40;

ControllerParams DefaultParams() {
  ControllerParams params;
  params.alpha = 0.75;
  return params;
}

// A schedule redrawn from U(lo, hi) at t = 0, interval, 2 * interval, ...
PiecewiseSchedule UniformRedraws(std::mt19937_64& rng, double lo, double hi,
                                 double interval, double duration) {
  std::uniform_real_distribution<double> draw(lo, hi);
  std::vector<PiecewiseSchedule::Step> steps;
  for (double t = 0.0; t < duration; t += interval)
    steps.push_back({t, draw(rng)});
  return PiecewiseSchedule(std::move(steps));
}

ReceiverConfig MakeReceiver(std::uint32_t id, PiecewiseSchedule router_delay) {
  ReceiverConfig r;
  r.id = ReceiverId{id};
  r.name = "r" + std::to_string(id);
  r.ack_latency_s = router_delay.Shifted(kSenderRouterLatency);
  r.forward_latency_s = std::move(router_delay);
  return r;
}

ScenarioConfig FourReceiverTopology(const std::string& name,
                                    std::uint64_t seed) {
  ScenarioConfig config;
  config.name = name;
  config.seed = seed;
  config.duration_s = kDuration;
  config.controller = DefaultParams();
  config.access_latency_s = PiecewiseSchedule::Constant(kSenderRouterLatency);
  std::uint32_t id = 1;
  for (double delay : kFourReceiverDelays)
    config.receivers.push_back(
        MakeReceiver(id++, PiecewiseSchedule::Constant(delay)));
  config.bottleneck_rate_bps = PiecewiseSchedule::Constant(kStaticRate);
  return config;
}

}  // namespace

ScenarioConfig BuildExperiment1(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ScenarioConfig config;
  config.name = "exp1";
  config.seed = seed;
  config.duration_s = kDuration;
  config.controller = DefaultParams();
  config.access_latency_s = PiecewiseSchedule::Constant(kSenderRouterLatency);
  config.receivers.push_back(MakeReceiver(
      1, UniformRedraws(rng, 2 * kMs, 22 * kMs, kResampleInterval,
                        kDuration)));
  config.bottleneck_rate_bps = PiecewiseSchedule::Constant(kStaticRate);
  return config;
}

ScenarioConfig BuildExperiment2(BandwidthVariant variant, std::uint64_t seed) {
  if (variant == BandwidthVariant::kStatic)
    return FourReceiverTopology("exp2-static", seed);
  ScenarioConfig config = FourReceiverTopology("exp2-dynamic", seed);
  std::mt19937_64 rng(seed);
  config.bottleneck_rate_bps = UniformRedraws(
      rng, 1 * kMbps, 5 * kMbps, kResampleInterval, config.duration_s);
  config.buffer_capacity_packets = kDynamicBufferPackets;
  return config;
}

ScenarioConfig BuildExperiment3(TcpVariant tcp, TcpOrdering ordering,
                                std::uint64_t seed) {
  const bool reno = tcp == TcpVariant::kReno;
  const bool p2p_first = ordering == TcpOrdering::kP2pFirst;
  ScenarioConfig config = FourReceiverTopology(
      std::string("exp3-") + TcpVariantName(tcp) +
          (p2p_first ? "-p2pfirst" : "-tcpfirst"),
      seed);

  CompetingFlowConfig flow;
  flow.name = "tcp";
  flow.variant = tcp;
  flow.receiver = config.receivers.front().id;
  flow.max_window_packets = kTcpReceiveWindowPackets;
  if (p2p_first) {
    flow.start_s = reno ? 15.0 : 40.0;
    flow.stop_s = reno ? 75.0 : 100.0;
  } else {
    // P2P joins after TCP has run for 25 s (Reno) or 30 s (BIC) and then
    // runs for the usual 100 s.
    config.p2p_start_s = reno ? 25.0 : 30.0;
    config.duration_s = config.p2p_start_s + kDuration;
    flow.start_s = 0.0;
    flow.stop_s = reno ? 85.0 : 60.0;
  }
  config.competing_flows.push_back(flow);
  return config;
}

std::vector<std::string> BuiltinScenarioNames() {
  return {"exp1",
          "exp2-static",
          "exp2-dynamic",
          "exp3-reno-p2pfirst",
          "exp3-reno-tcpfirst",
          "exp3-bic-p2pfirst",
          "exp3-bic-tcpfirst"};
}

std::optional<ScenarioConfig> BuildScenario(const std::string& name,
                                            std::uint64_t seed) {
  if (name == "exp1")
    return BuildExperiment1(seed);
  if (name == "exp2-static")
    return BuildExperiment2(BandwidthVariant::kStatic, seed);
  if (name == "exp2-dynamic")
    return BuildExperiment2(BandwidthVariant::kDynamic, seed);
  if (name == "exp3-reno-p2pfirst")
    return BuildExperiment3(TcpVariant::kReno, TcpOrdering::kP2pFirst, seed);
  if (name == "exp3-reno-tcpfirst")
    return BuildExperiment3(TcpVariant::kReno, TcpOrdering::kTcpFirst, seed);
  if (name == "exp3-bic-p2pfirst")
    return BuildExperiment3(TcpVariant::kBic, TcpOrdering::kP2pFirst, seed);
  if (name == "exp3-bic-tcpfirst")
    return BuildExperiment3(TcpVariant::kBic, TcpOrdering::kTcpFirst, seed);
  return std::nullopt;
}

}  // namespace p2pcc
