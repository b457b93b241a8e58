#ifndef P2PCC_EXPERIMENTS_CONFIG_IO_H_
#define P2PCC_EXPERIMENTS_CONFIG_IO_H_

#include <filesystem>
#include <string>

#include "json.hpp"

#include "p2pcc/sim/scenario_config.h"

namespace p2pcc {

// JSON mirrors ScenarioConfig field for field. Schedules are arrays of
// {"start_s", "value"} steps.
nlohmann::json ScenarioToJson(const ScenarioConfig& config);

// Missing optional fields take their defaults. Throws std::invalid_argument
// on type errors or unknown enum values; the result is not validated.
ScenarioConfig ScenarioFromJson(const nlohmann::json& j);

// Throws std::runtime_error naming the path on I/O or parse failure.
ScenarioConfig LoadScenarioFile(const std::filesystem::path& path);
void SaveScenarioFile(const ScenarioConfig& config,
                      const std::filesystem::path& path);

}  // namespace p2pcc

#endif  // P2PCC_EXPERIMENTS_CONFIG_IO_H_
