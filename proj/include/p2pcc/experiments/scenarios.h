#ifndef P2PCC_EXPERIMENTS_SCENARIOS_H_
#define P2PCC_EXPERIMENTS_SCENARIOS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "p2pcc/sim/scenario_config.h"

namespace p2pcc {

enum class BandwidthVariant {
  kStatic,
  kDynamic,
};

enum class TcpOrdering {
  kP2pFirst,
  kTcpFirst,
};

inline constexpr std::uint64_t kDefaultSeed = 1;

// One receiver; 20 ms sender-router leg; router-receiver delay redrawn every
// 10 s from U(2 ms, 22 ms); 4 Mbit/s bottleneck; 100 s.
ScenarioConfig BuildExperiment1(std::uint64_t seed = kDefaultSeed);

// Four receivers at 12/22/7/16 ms behind the router. Static: 4 Mbit/s.
// Dynamic: the rate is redrawn every 10 s from U(1, 5) Mbit/s.
ScenarioConfig BuildExperiment2(BandwidthVariant variant,
                                std::uint64_t seed = kDefaultSeed);

// Static four-receiver topology plus one TCP flow to the first receiver.
ScenarioConfig BuildExperiment3(TcpVariant tcp, TcpOrdering ordering,
                                std::uint64_t seed = kDefaultSeed);

// Built-in names: exp1, exp2-static, exp2-dynamic,
// exp3-{reno,bic}-{p2pfirst,tcpfirst}.
std::vector<std::string> BuiltinScenarioNames();
std::optional<ScenarioConfig> BuildScenario(const std::string& name,
                                            std::uint64_t seed = kDefaultSeed);

}  // namespace p2pcc

#endif  // P2PCC_EXPERIMENTS_SCENARIOS_H_
