// p2pcc: run built-in or JSON-defined scenarios, check the queue-bound
// properties of the fluid model, list built-in scenarios.
//
// Exit status: 0 ok, 1 runtime or I/O failure, 2 usage error, 3 property
// violations found by `verify`.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "p2pcc/experiments/config_io.h"
#include "p2pcc/experiments/csv_writer.h"
#include "p2pcc/experiments/fluid_model.h"
#include "p2pcc/experiments/scenarios.h"
#include "p2pcc/sim/simulator.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitViolations = 3;

constexpr const char* kOutputDirEnv = "P2PCC_OUTPUT_DIR";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::string scenario;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string dump_config;
  std::optional<double> gamma;
  std::optional<double> gamma2;
  std::optional<double> alpha;
  std::optional<double> period;
  std::optional<double> bw_window;
};

struct VerifyOptions {
  int trials = 100;
  std::uint64_t seed = 1;
};

p2pcc::ScenarioConfig ResolveScenario(const RunOptions& opt) {
  p2pcc::ScenarioConfig config;
  if (!opt.config_path.empty()) {
    if (!opt.scenario.empty())
      throw UsageError("give either a scenario name or --config, not both");
    config = p2pcc::LoadScenarioFile(opt.config_path);
    if (opt.seed)
      config.seed = *opt.seed;
  } else {
    if (opt.scenario.empty())
      throw UsageError("a scenario name or --config is required");
    auto built = p2pcc::BuildScenario(opt.scenario,
                                      opt.seed.value_or(p2pcc::kDefaultSeed));
    if (!built)
      throw UsageError("unknown scenario '" + opt.scenario +
                       "' (see `p2pcc list`)");
    config = std::move(*built);
  }

  p2pcc::ControllerParams& p = config.controller;
  if (opt.gamma)
    p.gamma = *opt.gamma;
  if (opt.gamma2)
    p.gamma2 = *opt.gamma2;
  if (opt.alpha)
    p.alpha = *opt.alpha;
  if (opt.period)
    p.period_s = *opt.period;
  if (opt.bw_window)
    p.bw_window_s = *opt.bw_window;
  try {
    p.Validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return config;
}

std::filesystem::path DefaultOutputPath(const std::string& name) {
  std::filesystem::path dir = ".";
  if (const char* env = std::getenv(kOutputDirEnv); env && *env)
    dir = env;
  return dir / (name.empty() ? std::string("scenario.csv") : name + ".csv");
}

int DoRun(const RunOptions& opt) {
  const p2pcc::ScenarioConfig config = ResolveScenario(opt);
  if (!opt.dump_config.empty()) {
    p2pcc::SaveScenarioFile(config, opt.dump_config);
    std::cout << "config=" << opt.dump_config << '\n';
    return kExitOk;
  }
  try {
    config.Validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const std::filesystem::path out =
      opt.out.empty() ? DefaultOutputPath(config.name)
                      : std::filesystem::path(opt.out);
  p2pcc::Simulator sim(config);
  const p2pcc::MetricsLog log = sim.Run();
  p2pcc::EmitCsv(log, out);

  const p2pcc::SimStats& s = sim.stats();
  std::cout << "scenario=" << config.name << '\n'
            << "seed=" << config.seed << '\n'
            << "rows=" << log.rows.size() << '\n'
            << "csv=" << out.string() << '\n'
            << "enqueued=" << s.enqueued << '\n'
            << "served=" << s.served << '\n'
            << "dropped=" << s.dropped << '\n'
            << "p2p_sent=" << s.p2p_sent << '\n'
            << "p2p_acked=" << s.p2p_acked << '\n'
            << "p2p_lost=" << s.p2p_lost << '\n';
  return kExitOk;
}

void PrintReport(const p2pcc::PropertyReport& r) {
  std::cout << "property=\"" << r.property << "\" trials=" << r.trials
            << " periods=" << r.periods_checked
            << " violations=" << r.violations.size()
            << " max_closed_form_error=" << r.max_closed_form_error << '\n';
  for (const auto& v : r.violations) {
    std::cout << "  violation trial=" << v.trial << " period=" << v.period
              << " queue=" << v.queue << " window=" << v.window << " detail=\""
              << v.detail << "\"\n";
  }
}

int DoVerify(const VerifyOptions& opt) {
  const auto upper = p2pcc::VerifyQueueUpperBound(opt.trials, opt.seed);
  const auto positive = p2pcc::VerifyQueuePositivity(opt.trials, opt.seed);
  PrintReport(upper);
  PrintReport(positive);
  return upper.ok() && positive.ok() ? kExitOk : kExitViolations;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic delay-based congestion control simulator", "p2pcc"};
  app.require_subcommand(1);

  RunOptions run;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a scenario, write CSV");
  run_cmd->add_option("scenario", run.scenario, "Built-in scenario name");
  run_cmd->add_option("--config", run.config_path, "Scenario JSON file");
  run_cmd->add_option("--seed", run.seed, "Seed override");
  run_cmd->add_option("--out", run.out,
                      std::string("CSV path (default: $") + kOutputDirEnv +
                          "/<scenario>.csv, or ./<scenario>.csv)");
  run_cmd->add_option("--dump-config", run.dump_config,
                      "Write the resolved scenario as JSON and exit");
  run_cmd->add_option("--gamma", run.gamma, "Quota gain, (0, 1]");
  run_cmd->add_option("--gamma2", run.gamma2,
                      "Window correction gain, packets/s");
  run_cmd->add_option("--alpha", run.alpha, "Reference fraction, (0, 1)");
  run_cmd->add_option("--T", run.period, "Control period, s");
  run_cmd->add_option("--tc", run.bw_window, "Ack-rate horizon, s");

  VerifyOptions verify;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Check the fluid-model queue bounds");
  verify_cmd->add_option("--trials", verify.trials, "Random configurations")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify.seed, "Seed");

  CLI::App* list_cmd = app.add_subcommand("list", "List built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0)
      return app.exit(e);
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*list_cmd) {
      for (const auto& name : p2pcc::BuiltinScenarioNames())
        std::cout << name << '\n';
      return kExitOk;
    }
    if (*verify_cmd)
      return DoVerify(verify);
    return DoRun(run);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << run_cmd->help();
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
