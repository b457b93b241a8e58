#include "p2pcc/experiments/fluid_model.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "p2pcc/control/controller.h"

namespace p2pcc {

namespace {

// Sum over receivers of share_p * (service in periods l - n_p .. l - 1): the
// traffic that has left the queue but is not yet acknowledged.
double ServedUnacked(const FluidConfig& config,
                     const std::vector<double>& served, int l) {
  double total = 0.0;
  for (std::size_t p = 0; p < config.shares.size(); ++p) {
    double sum = 0.0;
    for (int j = std::max(0, l - config.delay_periods[p]); j < l; ++j)
      sum += served[static_cast<std::size_t>(j)];
    total += config.shares[p] * sum;
  }
  return total;
}

struct TrialSetup {
  FluidConfig config;
  double u_max = 0.0;
  int max_delay = 0;
};

TrialSetup SampleTrial(std::mt19937_64& rng, int trial, int periods) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> receivers(1, 5);
  std::uniform_int_distribution<int> delay(0, 10);

  TrialSetup setup;
  FluidConfig& c = setup.config;
  c.periods = periods;
  // Every tenth trial pins gamma to its upper edge.
  c.gamma = trial % 10 == 0 ? 1.0 : 1.0 - unit(rng);

  const int m = receivers(rng);
  double share_sum = 0.0;
  for (int p = 0; p < m; ++p) {
    c.shares.push_back(0.05 + unit(rng));
    share_sum += c.shares.back();
    c.delay_periods.push_back(delay(rng));
  }
  for (double& s : c.shares)
    s /= share_sum;
  setup.max_delay =
      *std::max_element(c.delay_periods.begin(), c.delay_periods.end());

  setup.u_max = 1.0 + 49.0 * unit(rng);
  // Levels in (0, u_max]: i.i.d. per period, or held for 1-50 periods.
  auto level = [&] { return setup.u_max * (1.0 - unit(rng)); };
  if (unit(rng) < 0.5) {
    for (int l = 0; l < periods; ++l)
      c.service_capacity.push_back(level());
  } else {
    std::uniform_int_distribution<int> hold(1, 50);
    while (static_cast<int>(c.service_capacity.size()) < periods) {
      const double v = level();
      for (int n = hold(rng); n > 0; --n)
        c.service_capacity.push_back(v);
    }
    c.service_capacity.resize(static_cast<std::size_t>(periods));
  }
  return setup;
}

void RecordClosedFormError(const FluidTrace& trace, int trial,
                           PropertyReport& report) {
  report.max_closed_form_error =
      std::max(report.max_closed_form_error, trace.max_closed_form_error);
  if (trace.max_closed_form_error > kClosedFormTolerance) {
    report.violations.push_back(
        {trial, -1, 0.0, 0.0,
         "closed form disagrees by " +
             std::to_string(trace.max_closed_form_error)});
  }
}

}  // namespace

void FluidConfig::Validate() const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("fluid model: " + what);
  };
  if (!(gamma > 0.0 && gamma <= 1.0))
    fail("gamma must be in (0, 1]");
  if (window.empty())
    fail("window is empty");
  if (shares.empty() || shares.size() != delay_periods.size())
    fail("shares and delays must be non-empty and of equal length");
  double sum = 0.0;
  for (double s : shares) {
    if (s < 0.0)
      fail("negative share");
    sum += s;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    fail("shares must sum to 1");
  for (int n : delay_periods) {
    if (n < 0)
      fail("negative delay");
  }
  if (service_capacity.empty())
    fail("service capacity is empty");
  for (double h : service_capacity) {
    if (h < 0.0)
      fail("negative service capacity");
  }
  if (periods < 1)
    fail("periods must be positive");
}

double FluidConfig::WindowAt(int l) const {
  const auto i = std::min(static_cast<std::size_t>(l), window.size() - 1);
  return window[i];
}

double FluidConfig::CapacityAt(int l) const {
  const auto i =
      std::min(static_cast<std::size_t>(l), service_capacity.size() - 1);
  return service_capacity[i];
}

FluidTrace RunFluidRecursion(const FluidConfig& config) {
  config.Validate();
  const auto n = static_cast<std::size_t>(config.periods);
  FluidTrace trace;
  trace.queue.assign(n + 1, 0.0);
  trace.window_slack.assign(n + 1, 0.0);
  trace.injected.assign(n, 0.0);
  trace.served.assign(n, 0.0);
  trace.acked.assign(n, 0.0);
  trace.window_slack[0] = config.WindowAt(0);

  for (int l = 0; l < config.periods; ++l) {
    const auto i = static_cast<std::size_t>(l);
    for (std::size_t p = 0; p < config.shares.size(); ++p) {
      const int j = l - config.delay_periods[p] - 1;
      if (j >= 0)
        trace.acked[i] += config.shares[p] * trace.served[static_cast<std::size_t>(j)];
    }

    // In flight = queue + served but unacknowledged, so the deficit
    // w - in_flight is the slack minus the unacknowledged part. Working from
    // the slack keeps deficits far below one ulp of w.
    const double w = config.WindowAt(l);
    const double y = trace.queue[i];
    const double slack_now = trace.window_slack[i];
    const double unacked = ServedUnacked(config, trace.served, l);
    const double u = std::max(0.0, config.gamma * (slack_now - unacked));
    const double h = std::min(config.CapacityAt(l), y + u);
    trace.injected[i] = u;
    trace.served[i] = h;
    trace.queue[i + 1] = y + u - h;

    const double w_next = config.WindowAt(l + 1);
    if (u > 0.0) {
      const double slack = (1.0 - config.gamma) * slack_now +
                           config.gamma * unacked + h;
      trace.window_slack[i + 1] = (w_next - w) + slack;
      const double closed = w - slack;
      trace.max_closed_form_error = std::max(
          trace.max_closed_form_error, std::abs(closed - trace.queue[i + 1]));
    } else {
      trace.window_slack[i + 1] = (w_next - w) + slack_now + h;
    }
  }
  return trace;
}

double ClosedFormNextQueue(const FluidConfig& config, const FluidTrace& trace,
                           int l) {
  const auto i = static_cast<std::size_t>(l);
  const double w = config.WindowAt(l);
  return w - (1.0 - config.gamma) * (w - trace.queue[i]) -
         config.gamma * ServedUnacked(config, trace.served, l) -
         trace.served[i];
}

PropertyReport VerifyQueueUpperBound(int trials, std::uint64_t seed,
                                     int periods) {
  if (trials < 1)
    throw std::invalid_argument("trials must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> window(1.0, 200.0);
  PropertyReport report;
  report.property = "queue upper bound";
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    TrialSetup setup = SampleTrial(rng, t, periods);
    setup.config.window = {window(rng)};
    const FluidTrace trace = RunFluidRecursion(setup.config);
    const double w = setup.config.window.front();
    for (int l = 1; l <= periods; ++l) {
      ++report.periods_checked;
      const auto i = static_cast<std::size_t>(l);
      if (trace.window_slack[i] <= 0.0) {
        report.violations.push_back(
            {t, l, trace.queue[i], w, "queue reached the window"});
      }
    }
    RecordClosedFormError(trace, t, report);
  }
  return report;
}

PropertyReport VerifyQueuePositivity(int trials, std::uint64_t seed,
                                     int periods) {
  if (trials < 1)
    throw std::invalid_argument("trials must be at least 1");
  std::mt19937_64 rng(seed);
  PropertyReport report;
  report.property = "queue positivity";
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    TrialSetup setup = SampleTrial(rng, t, periods);
    FluidConfig& c = setup.config;
    std::vector<double> delays(c.delay_periods.begin(), c.delay_periods.end());
    const double w =
        MinNonEmptyQueueWindow(setup.u_max, c.shares, delays, c.gamma) + 1.0;
    c.window = {w};
    const FluidTrace trace = RunFluidRecursion(c);
    for (int l = setup.max_delay + 2; l <= periods; ++l) {
      ++report.periods_checked;
      const auto i = static_cast<std::size_t>(l);
      if (trace.queue[i] <= 0.0)
        report.violations.push_back({t, l, trace.queue[i], w, "queue empty"});
    }
    RecordClosedFormError(trace, t, report);
  }
  return report;
}

}  // namespace p2pcc
