#include "p2pcc/experiments/config_io.h"

#include <fstream>
#include <stdexcept>

namespace p2pcc {

namespace {

using nlohmann::json;

json ScheduleToJson(const PiecewiseSchedule& s) {
  json steps = json::array();
  for (const auto& step : s.steps())
    steps.push_back({{"start_s", step.start_s}, {"value", step.value}});
  return steps;
}

PiecewiseSchedule ScheduleFromJson(const json& j) {
  if (j.is_number())
    return PiecewiseSchedule::Constant(j.get<double>());
  std::vector<PiecewiseSchedule::Step> steps;
  for (const auto& step : j)
    steps.push_back({step.at("start_s").get<double>(),
                     step.at("value").get<double>()});
  return PiecewiseSchedule(std::move(steps));
}

TcpVariant VariantFromName(const std::string& name) {
  if (name == "reno")
    return TcpVariant::kReno;
  if (name == "bic")
    return TcpVariant::kBic;
  throw std::invalid_argument("unknown tcp variant '" + name + "'");
}

json ControllerToJson(const ControllerParams& p) {
  return {{"gamma", p.gamma},
          {"gamma2", p.gamma2},
          {"alpha", p.alpha},
          {"period_s", p.period_s},
          {"bw_window_s", p.bw_window_s},
          {"initial_qmax_offset_s", p.initial_qmax_offset_s},
          {"packet_size_bits", p.packet_size_bits},
          {"trust_fraction", p.trust_fraction},
          {"bootstrap_quota", p.bootstrap_quota},
          {"reorder_threshold", p.reorder_threshold},
          {"timeout_factor", p.timeout_factor}};
}

template <typename T>
void ReadIfPresent(const json& j, const char* key, T& out) {
  if (j.contains(key))
    out = j.at(key).get<T>();
}

ControllerParams ControllerFromJson(const json& j) {
  ControllerParams p;
  ReadIfPresent(j, "gamma", p.gamma);
  ReadIfPresent(j, "gamma2", p.gamma2);
  ReadIfPresent(j, "alpha", p.alpha);
  ReadIfPresent(j, "period_s", p.period_s);
  ReadIfPresent(j, "bw_window_s", p.bw_window_s);
  ReadIfPresent(j, "initial_qmax_offset_s", p.initial_qmax_offset_s);
  ReadIfPresent(j, "packet_size_bits", p.packet_size_bits);
  ReadIfPresent(j, "trust_fraction", p.trust_fraction);
  ReadIfPresent(j, "bootstrap_quota", p.bootstrap_quota);
  ReadIfPresent(j, "reorder_threshold", p.reorder_threshold);
  ReadIfPresent(j, "timeout_factor", p.timeout_factor);
  return p;
}

}  // namespace

json ScenarioToJson(const ScenarioConfig& c) {
  json receivers = json::array();
  for (const auto& r : c.receivers) {
    receivers.push_back({{"id", r.id.value},
                         {"name", r.name},
                         {"forward_latency_s", ScheduleToJson(r.forward_latency_s)},
                         {"ack_latency_s", ScheduleToJson(r.ack_latency_s)}});
  }
  json flows = json::array();
  for (const auto& f : c.competing_flows) {
    flows.push_back({{"name", f.name},
                     {"variant", TcpVariantName(f.variant)},
                     {"receiver", f.receiver.value},
                     {"start_s", f.start_s},
                     {"stop_s", f.stop_s},
                     {"initial_ssthresh", f.initial_ssthresh},
                     {"max_window_packets", f.max_window_packets},
                     {"min_rto_s", f.min_rto_s}});
  }
  json block = {{"block_size_packets", c.block_source.block_size_packets},
                {"backlog_blocks", nullptr}};
  if (c.block_source.backlog_blocks)
    block["backlog_blocks"] = *c.block_source.backlog_blocks;

  json j = {{"name", c.name},
            {"duration_s", c.duration_s},
            {"seed", c.seed},
            {"controller", ControllerToJson(c.controller)},
            {"p2p_start_s", c.p2p_start_s},
            {"p2p_stop_s", nullptr},
            {"access_latency_s", ScheduleToJson(c.access_latency_s)},
            {"receivers", receivers},
            {"bottleneck_rate_bps", ScheduleToJson(c.bottleneck_rate_bps)},
            {"buffer_capacity_packets", nullptr},
            {"block_source", block},
            {"competing_flows", flows}};
  if (c.p2p_stop_s)
    j["p2p_stop_s"] = *c.p2p_stop_s;
  if (c.buffer_capacity_packets)
    j["buffer_capacity_packets"] = *c.buffer_capacity_packets;
  return j;
}

ScenarioConfig ScenarioFromJson(const json& j) {
  try {
    ScenarioConfig c;
    ReadIfPresent(j, "name", c.name);
    ReadIfPresent(j, "duration_s", c.duration_s);
    ReadIfPresent(j, "seed", c.seed);
    if (j.contains("controller"))
      c.controller = ControllerFromJson(j.at("controller"));
    ReadIfPresent(j, "p2p_start_s", c.p2p_start_s);
    if (j.contains("p2p_stop_s") && !j.at("p2p_stop_s").is_null())
      c.p2p_stop_s = j.at("p2p_stop_s").get<double>();
    c.access_latency_s = ScheduleFromJson(j.at("access_latency_s"));
    for (const auto& r : j.at("receivers")) {
      ReceiverConfig rc;
      rc.id = ReceiverId{r.at("id").get<std::uint32_t>()};
      rc.name = r.at("name").get<std::string>();
      rc.forward_latency_s = ScheduleFromJson(r.at("forward_latency_s"));
      rc.ack_latency_s = ScheduleFromJson(r.at("ack_latency_s"));
      c.receivers.push_back(std::move(rc));
    }
    c.bottleneck_rate_bps = ScheduleFromJson(j.at("bottleneck_rate_bps"));
    if (j.contains("buffer_capacity_packets") &&
        !j.at("buffer_capacity_packets").is_null()) {
      c.buffer_capacity_packets =
          j.at("buffer_capacity_packets").get<std::size_t>();
    }
    if (j.contains("block_source")) {
      const json& b = j.at("block_source");
      ReadIfPresent(b, "block_size_packets", c.block_source.block_size_packets);
      if (b.contains("backlog_blocks") && !b.at("backlog_blocks").is_null())
        c.block_source.backlog_blocks = b.at("backlog_blocks").get<std::uint64_t>();
    }
    if (j.contains("competing_flows")) {
      for (const auto& f : j.at("competing_flows")) {
        CompetingFlowConfig fc;
        fc.name = f.at("name").get<std::string>();
        fc.variant = VariantFromName(f.value("variant", std::string("reno")));
        fc.receiver = ReceiverId{f.at("receiver").get<std::uint32_t>()};
        fc.start_s = f.at("start_s").get<double>();
        fc.stop_s = f.at("stop_s").get<double>();
        ReadIfPresent(f, "initial_ssthresh", fc.initial_ssthresh);
        ReadIfPresent(f, "max_window_packets", fc.max_window_packets);
        ReadIfPresent(f, "min_rto_s", fc.min_rto_s);
        c.competing_flows.push_back(std::move(fc));
      }
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("scenario json: ") + e.what());
  }
}

ScenarioConfig LoadScenarioFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path.string());
  try {
    return ScenarioFromJson(json::parse(in));
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void SaveScenarioFile(const ScenarioConfig& config,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out)
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << ScenarioToJson(config).dump(2) << '\n';
  if (!out)
    throw std::runtime_error("write failed for " + path.string());
}

}  // namespace p2pcc
