#include "p2pcc/sim/simulator.h"

#include <cmath>
#include <stdexcept>

namespace p2pcc {

namespace {

constexpr double kTcpTimerInterval = 0.01;
// Slack for comparing event times that sit on the period grid.
constexpr double kGridSlack = 1e-9;

std::vector<ReceiverId> ReceiverRotation(const ScenarioConfig& config) {
  std::vector<ReceiverId> ids;
  for (const auto& r : config.receivers)
    ids.push_back(r.id);
  return ids;
}

const ScenarioConfig& Validated(const ScenarioConfig& config) {
  config.Validate();
  return config;
}

}  // namespace

struct Simulator::PeriodAccumulator {
  explicit PeriodAccumulator(std::size_t receivers, std::size_t flows)
      : drtt_sum(receivers, 0.0),
        latency_sum_by_receiver(receivers, 0.0),
        acks_by_receiver(receivers, 0),
        served_bits(flows, 0.0) {}

  void Reset() {
    std::fill(drtt_sum.begin(), drtt_sum.end(), 0.0);
    std::fill(latency_sum_by_receiver.begin(), latency_sum_by_receiver.end(),
              0.0);
    std::fill(acks_by_receiver.begin(), acks_by_receiver.end(), 0);
    std::fill(served_bits.begin(), served_bits.end(), 0.0);
  }

  std::vector<double> drtt_sum;
  std::vector<double> latency_sum_by_receiver;
  std::vector<std::int64_t> acks_by_receiver;
  std::vector<double> served_bits;
};

Simulator::Simulator(ScenarioConfig config)
    : config_(Validated(config)),
      controller_(config_.controller),
      source_(config_.block_source.block_size_packets,
              ReceiverRotation(config_), config_.block_source.backlog_blocks),
      bottleneck_(config_.EffectiveBufferCapacity(),
                  config_.bottleneck_rate_bps),
      access_link_(ReceiverId{}, LinkDirection::kForward,
                   config_.access_latency_s) {
  for (const auto& r : config_.receivers) {
    controller_.AddReceiver(r.id);
    forward_links_.emplace_back(r.id, LinkDirection::kForward,
                                r.forward_latency_s);
    ack_links_.emplace_back(r.id, LinkDirection::kAck, r.ack_latency_s);
  }
  FlowId flow = kP2pFlow;
  for (const auto& f : config_.competing_flows) {
    ++flow;
    tcp_flows_.push_back(std::make_unique<TcpEndpoint>(
        flow, f, config_.controller.packet_size_bits,
        [this](SimPacket packet) { Transmit(packet, events_.now()); }));
  }
  const std::size_t flows = 1 + tcp_flows_.size();
  period_ = std::make_unique<PeriodAccumulator>(config_.receivers.size(),
                                                flows);
  stats_.served_bits_per_flow.assign(flows, 0.0);

  log_.flow_names.push_back("p2p");
  for (const auto& f : config_.competing_flows)
    log_.flow_names.push_back(f.name);
  for (const auto& r : config_.receivers)
    log_.receiver_names.push_back(r.name);
}

Simulator::~Simulator() = default;

std::size_t Simulator::ReceiverIndex(ReceiverId id) const {
  for (std::size_t i = 0; i < config_.receivers.size(); ++i) {
    if (config_.receivers[i].id == id)
      return i;
  }
  throw std::logic_error("packet for unknown receiver");
}

MetricsLog Simulator::Run() {
  const double period = config_.controller.period_s;
  const auto periods =
      static_cast<std::int64_t>(std::llround(config_.duration_s / period));
  for (std::int64_t k = 0; k <= periods; ++k) {
    events_.Schedule(static_cast<double>(k) * period,
                     [this, k] { OnPeriodBoundary(k); });
  }

  for (std::size_t i = 0; i < tcp_flows_.size(); ++i) {
    const CompetingFlowConfig& cfg = config_.competing_flows[i];
    TcpEndpoint* flow = tcp_flows_[i].get();
    if (cfg.start_s > config_.duration_s)
      continue;
    events_.Schedule(cfg.start_s, [flow, this] { flow->Start(events_.now()); });
    if (cfg.stop_s <= config_.duration_s)
      events_.Schedule(cfg.stop_s, [flow] { flow->Stop(); });
    for (double t = cfg.start_s + kTcpTimerInterval; t <= config_.duration_s;
         t += kTcpTimerInterval) {
      events_.Schedule(t, [flow, this] { flow->CheckTimeout(events_.now()); });
    }
  }

  events_.RunUntil(config_.duration_s);

  stats_.enqueued = bottleneck_.enqueued();
  stats_.served = bottleneck_.served();
  stats_.dropped = bottleneck_.dropped();
  stats_.resident = static_cast<std::int64_t>(bottleneck_.occupancy());
  const ControllerState& cs = controller_.state();
  stats_.p2p_acked = cs.cumulative_acked;
  stats_.p2p_lost = cs.cumulative_lost;
  stats_.p2p_unknown_acks = cs.unknown_acks;
  stats_.p2p_in_flight = cs.InFlight();
  return log_;
}

void Simulator::OnPeriodBoundary(std::int64_t k) {
  const double now = events_.now();
  const bool p2p_active = now + kGridSlack >= config_.p2p_start_s &&
                          now + kGridSlack < config_.P2pStop();
  if (p2p_active) {
    last_tick_ = controller_.ControlTick(now);
    const std::vector<BlockPacket> batch =
        source_.NextPackets(last_tick_.quota);
    // Spread the period's quota evenly instead of bursting it.
    const double spacing =
        config_.controller.period_s / static_cast<double>(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (i == 0) {
        SendP2pPacket(batch[i], now);
        continue;
      }
      const BlockPacket bp = batch[i];
      events_.Schedule(now + spacing * static_cast<double>(i),
                       [this, bp] { SendP2pPacket(bp, events_.now()); });
    }
  } else {
    last_tick_.window = 0;
    last_tick_.quota = 0;
  }
  if (k >= 1)
    RecordRow(now);
}

void Simulator::SendP2pPacket(const BlockPacket& bp, double now) {
  if (any_block_sent_ && bp.block_id < last_block_id_)
    ++stats_.block_interleavings;
  any_block_sent_ = true;
  last_block_id_ = bp.block_id;

  SimPacket packet;
  packet.flow = kP2pFlow;
  packet.seq = controller_.OnPacketSent(bp.receiver, now);
  packet.receiver = bp.receiver;
  packet.block_id = bp.block_id;
  packet.size_bits = config_.controller.packet_size_bits;
  packet.send_time_s = now;
  ++stats_.p2p_sent;
  Transmit(packet, now);
}

void Simulator::Transmit(SimPacket packet, double now) {
  packet.base_rtt_s = access_link_.LatencyAt(now);
  const double arrival = access_link_.Transit(now);
  events_.Schedule(arrival, [this, packet] {
    OnArrivalAtBottleneck(packet, events_.now());
  });
}

void Simulator::OnArrivalAtBottleneck(SimPacket packet, double now) {
  if (bottleneck_.Enqueue(packet, now) == EnqueueResult::kAccepted)
    StartService(now);
}

void Simulator::StartService(double now) {
  if (const auto departure = bottleneck_.ServiceNext(now))
    events_.Schedule(*departure, [this] { OnDeparture(events_.now()); });
}

void Simulator::OnDeparture(double now) {
  SimPacket packet = bottleneck_.CompleteService(now);
  if (packet.enqueue_time_s < last_departure_enqueue_s_)
    ++stats_.fifo_violations;
  last_departure_enqueue_s_ = packet.enqueue_time_s;

  stats_.served_bits += packet.size_bits;
  stats_.served_bits_per_flow[packet.flow] += packet.size_bits;
  period_->served_bits[packet.flow] += packet.size_bits;

  DelayLink& link = forward_links_[ReceiverIndex(packet.receiver)];
  packet.base_rtt_s += link.LatencyAt(now);
  const double arrival = link.Transit(now);
  events_.Schedule(arrival,
                   [this, packet] { OnDelivery(packet, events_.now()); });

  StartService(now);
  if (bottleneck_.occupancy() > 0 && !bottleneck_.busy())
    ++stats_.idle_with_backlog;
}

void Simulator::OnDelivery(SimPacket packet, double now) {
  // The receiver acks immediately.
  DelayLink& link = ack_links_[ReceiverIndex(packet.receiver)];
  packet.base_rtt_s += link.LatencyAt(now);
  const double arrival = link.Transit(now);
  events_.Schedule(arrival,
                   [this, packet] { OnAckAtSender(packet, events_.now()); });
}

void Simulator::OnAckAtSender(const SimPacket& packet, double now) {
  if (packet.flow != kP2pFlow) {
    tcp_flows_[packet.flow - 1]->OnAck(packet, now);
    return;
  }
  if (controller_.OnAck(packet.receiver, packet.seq, now) !=
      AckResult::kAccepted) {
    return;
  }
  const std::size_t i = ReceiverIndex(packet.receiver);
  const double latency = now - packet.send_time_s;
  period_->drtt_sum[i] += latency - packet.base_rtt_s;
  period_->latency_sum_by_receiver[i] += latency;
  ++period_->acks_by_receiver[i];
  CheckConservation();
}

void Simulator::CheckConservation() {
  const ControllerState& s = controller_.state();
  std::int64_t in_flight = 0;
  for (const auto& r : s.receivers)
    in_flight += r.in_flight;
  if (s.cumulative_sent - s.cumulative_acked - s.cumulative_lost != in_flight)
    ++stats_.conservation_violations;
}

void Simulator::RecordRow(double now) {
  const double period = config_.controller.period_s;
  const double pkt_kbits = config_.controller.packet_size_bits / 1000.0;
  const ControllerState& cs = controller_.state();
  const MetricsRow* prev = log_.rows.empty() ? nullptr : &log_.rows.back();

  MetricsRow row;
  row.time_s = now;
  row.w_kbits = static_cast<double>(last_tick_.window) * pkt_kbits;
  row.u_kbits = static_cast<double>(last_tick_.quota) * pkt_kbits;
  const double d_ref = cs.d_ref.value_or(0.0);
  row.d_ref_ms = d_ref * 1e3;
  row.u_est_kbps = cs.est_bandwidth_pps * pkt_kbits;

  std::int64_t acks = 0;
  double latency_sum = 0.0;
  double ref_sum = 0.0;
  row.drtt_ms.resize(config_.receivers.size());
  for (std::size_t i = 0; i < config_.receivers.size(); ++i) {
    const std::int64_t n = period_->acks_by_receiver[i];
    if (n > 0) {
      row.drtt_ms[i] = period_->drtt_sum[i] / static_cast<double>(n) * 1e3;
      acks += n;
      latency_sum += period_->latency_sum_by_receiver[i];
      const double d_min = cs.receivers[i].d_min.value_or(0.0);
      ref_sum += static_cast<double>(n) * (d_min + d_ref);
    } else {
      row.drtt_ms[i] = prev ? prev->drtt_ms[i] : 0.0;
    }
  }
  row.ack_rate_kbps =
      static_cast<double>(acks) * pkt_kbits / period;
  if (acks > 0) {
    row.rtt_avg_ms = latency_sum / static_cast<double>(acks) * 1e3;
    row.rtt_ref_ms = ref_sum / static_cast<double>(acks) * 1e3;
  } else if (prev) {
    row.rtt_avg_ms = prev->rtt_avg_ms;
    row.rtt_ref_ms = prev->rtt_ref_ms;
  }

  row.queue_packets = static_cast<double>(bottleneck_.occupancy());
  row.cumulative_drops = bottleneck_.dropped();
  for (double bits : period_->served_bits)
    row.throughput_kbps.push_back(bits / period / 1000.0);

  double path_sum = 0.0;
  for (const auto& r : config_.receivers)
    path_sum += config_.PathRtt(r, now);
  row.path_rtt_ms =
      path_sum / static_cast<double>(config_.receivers.size()) * 1e3;
  row.capacity_kbps = bottleneck_.RateAt(now) / 1000.0;
  row.loss_events = cs.loss_events;
  row.dref_recalibrations = cs.dref_recalibrations;

  log_.rows.push_back(std::move(row));
  period_->Reset();
}

MetricsLog RunScenario(const ScenarioConfig& config) {
  Simulator sim(config);
  return sim.Run();
}

}  // namespace p2pcc
