#include "p2pcc/control/controller.h"

#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

namespace p2pcc {
namespace {

constexpr double kMs = 1e-3;

ControllerState StateWith(std::int64_t window, std::int64_t sent,
                          std::int64_t acked) {
  ControllerState s;
  s.window_w = window;
  s.cumulative_sent = sent;
  s.cumulative_acked = acked;
  return s;
}

ReceiverStats Receiver(std::uint32_t id, std::optional<double> d_min,
                       std::optional<double> d_max = std::nullopt) {
  ReceiverStats r;
  r.id = ReceiverId{id};
  r.d_min = d_min;
  r.d_max = d_max;
  return r;
}

TEST(SendQuota, EmptyPipeQuotaEqualsWindow) {
  ControllerParams p;
  p.gamma = 1.0;
  EXPECT_EQ(ComputeSendQuota(StateWith(100, 0, 0), p), 100);
}

TEST(SendQuota, GainScalesDeficit) {
  ControllerParams p;
  p.gamma = 0.5;
  EXPECT_EQ(ComputeSendQuota(StateWith(100, 40, 0), p), 30);
}

TEST(SendQuota, NegativeDeficitClampsToZero) {
  ControllerParams p;
  p.gamma = 1.0;
  EXPECT_EQ(ComputeSendQuota(StateWith(100, 130, 0), p), 0);
}

TEST(SendQuota, RoundsHalfUp) {
  ControllerParams p;
  p.gamma = 0.5;
  EXPECT_EQ(ComputeSendQuota(StateWith(5, 0, 0), p), 3);
}

TEST(Dref, LossCalibratedFraction) {
  ControllerParams p;
  p.alpha = 0.75;
  std::vector<ReceiverStats> rs{Receiver(1, 20 * kMs, 120 * kMs)};
  ASSERT_TRUE(ComputeDref(rs, p).has_value());
  EXPECT_NEAR(*ComputeDref(rs, p), 75 * kMs, 1e-12);
  // Reported RTT reference is d_min + d_ref.
  EXPECT_NEAR(*rs[0].d_min + *ComputeDref(rs, p), 95 * kMs, 1e-12);
}

TEST(Dref, BootstrapOffsetBeforeLoss) {
  ControllerParams p;
  p.alpha = 0.5;
  p.initial_qmax_offset_s = 40 * kMs;
  std::vector<ReceiverStats> rs{Receiver(1, 20 * kMs)};
  EXPECT_NEAR(*ComputeDref(rs, p), 20 * kMs, 1e-12);
}

TEST(Dref, TightestReceiverWins) {
  ControllerParams p;
  p.alpha = 0.75;
  std::vector<ReceiverStats> rs{Receiver(1, 10 * kMs, 90 * kMs),
                                Receiver(2, 30 * kMs, 130 * kMs)};
  EXPECT_NEAR(*ComputeDref(rs, p), 60 * kMs, 1e-12);
}

TEST(Dref, EmptyWithoutSamples) {
  ControllerParams p;
  std::vector<ReceiverStats> rs{Receiver(1, std::nullopt, 50 * kMs)};
  EXPECT_FALSE(ComputeDref(rs, p).has_value());
}

ControllerState WindowState(double u_pps, double d_ref, double d,
                            const std::vector<double>& d_mins,
                            const std::vector<double>& shares) {
  ControllerState s;
  s.est_bandwidth_pps = u_pps;
  s.d_ref = d_ref;
  s.avg_queue_delay_s = d;
  for (std::size_t i = 0; i < d_mins.size(); ++i) {
    ReceiverStats r = Receiver(static_cast<std::uint32_t>(i + 1), d_mins[i]);
    r.lambda_sq = shares[i];
    s.receivers.push_back(r);
  }
  return s;
}

TEST(Window, SingleReceiverSteadyState) {
  ControllerParams p;
  p.period_s = 50 * kMs;
  const auto s = WindowState(333, 75 * kMs, 75 * kMs, {20 * kMs}, {1.0});
  EXPECT_EQ(ComputeWindow(s, p), 50);
}

TEST(Window, ColdStartCorrectionOpensWindow) {
  ControllerParams p;
  p.gamma2 = 200;
  const auto s = WindowState(0, 75 * kMs, 0.0, {20 * kMs}, {0.0});
  EXPECT_EQ(ComputeWindow(s, p), 16);
}

TEST(Window, FourReceiversHandEvaluated) {
  // 333 * (0.25 * (12 + 22 + 7 + 16) ms + 40 ms + 50 ms) + 1 = 35.715.
  ControllerParams p;
  p.period_s = 50 * kMs;
  const auto s = WindowState(333, 40 * kMs, 40 * kMs,
                             {12 * kMs, 22 * kMs, 7 * kMs, 16 * kMs},
                             {0.25, 0.25, 0.25, 0.25});
  EXPECT_EQ(ComputeWindow(s, p), 36);
}

TEST(Window, FlooredAtOnePacket) {
  ControllerParams p;
  const auto s = WindowState(10, 10 * kMs, 2.0, {20 * kMs}, {1.0});
  EXPECT_EQ(ComputeWindow(s, p), 1);
}

TEST(Bandwidth, NoAcksGivesZero) {
  ControllerParams p;
  ControllerState s;
  s.receivers.push_back(Receiver(1, std::nullopt));
  EXPECT_EQ(AckRate(s, p, 5.0), 0.0);
}

TEST(Bandwidth, UniformAcksOverHorizon) {
  ControllerParams p;
  p.bw_window_s = 1.0;
  ControllerState s;
  ReceiverStats r = Receiver(1, 20 * kMs);
  for (int i = 0; i < 333; ++i)
    r.ack_history.push_back({4.0 + (i + 0.5) / 333.0, 0.02});
  s.receivers.push_back(r);
  EXPECT_NEAR(AckRate(s, p, 5.0), 333.0, 1e-9);
  // 333 packets/s of 12000 bits is about 4000 Kbit/s.
  EXPECT_NEAR(AckRate(s, p, 5.0) * 12000 / 1000, 3996, 1e-6);
}

TEST(Bandwidth, TrustGate) {
  ControllerParams p;
  p.trust_fraction = 0.25;
  ControllerState s;
  ReceiverStats r = Receiver(1, 20 * kMs);
  for (int i = 0; i < 100; ++i)
    r.ack_history.push_back({4.0 + i / 100.0 + 0.005, 0.02});
  s.receivers.push_back(r);
  s.d_ref = 80 * kMs;
  s.est_bandwidth_pps = 300;

  s.avg_queue_delay_s = 30 * kMs;  // loaded: refreshed even if lower
  EXPECT_NEAR(EstimateBandwidth(s, p, 5.0), 100.0, 1e-9);
  s.avg_queue_delay_s = 10 * kMs;  // unloaded: previous value kept
  EXPECT_NEAR(EstimateBandwidth(s, p, 5.0), 300.0, 1e-9);
  s.est_bandwidth_pps = 50;        // unloaded, but more acks than believed
  EXPECT_NEAR(EstimateBandwidth(s, p, 5.0), 100.0, 1e-9);
}

TEST(LambdaSquared, Ratios) {
  ControllerState s;
  s.receivers = {Receiver(1, 0.01), Receiver(2, 0.01)};
  s.receivers[0].in_flight = 10;
  s.receivers[1].in_flight = 30;
  const auto shares = LambdaSquaredShares(s);
  EXPECT_DOUBLE_EQ(shares[0], 0.25);
  EXPECT_DOUBLE_EQ(shares[1], 0.75);
}

TEST(LambdaSquared, EmptyPipe) {
  ControllerState s;
  s.receivers = {Receiver(1, 0.01), Receiver(2, 0.01)};
  EXPECT_EQ(LambdaSquaredShares(s), (std::vector<double>{0.0, 0.0}));
}

TEST(LambdaSquared, SingleReceiver) {
  ControllerState s;
  s.receivers = {Receiver(1, 0.01)};
  s.receivers[0].in_flight = 7;
  EXPECT_DOUBLE_EQ(LambdaSquaredShares(s)[0], 1.0);
}

TEST(NonEmptyQueueWindow, Examples) {
  const std::vector<double> one{1.0};
  const std::vector<double> five{5.0};
  EXPECT_DOUBLE_EQ(MinNonEmptyQueueWindow(10, one, five, 1.0), 60.0);
  EXPECT_DOUBLE_EQ(MinNonEmptyQueueWindow(10, one, five, 0.5), 70.0);
  const std::vector<double> halves{0.5, 0.5};
  const std::vector<double> delays{2.0, 6.0};
  EXPECT_DOUBLE_EQ(MinNonEmptyQueueWindow(20, halves, delays, 1.0), 100.0);
}

TEST(NonEmptyQueueWindow, RejectsBadInput) {
  const std::vector<double> one{1.0};
  const std::vector<double> two{1.0, 2.0};
  EXPECT_THROW(MinNonEmptyQueueWindow(10, one, two, 1.0),
               std::invalid_argument);
  EXPECT_THROW(MinNonEmptyQueueWindow(10, one, one, 0.0),
               std::invalid_argument);
}

TEST(Params, Validation) {
  ControllerParams p;
  EXPECT_NO_THROW(p.Validate());
  p.gamma = 1.0;
  EXPECT_NO_THROW(p.Validate());
  p.gamma = 0.0;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
  p = {};
  p.alpha = 1.0;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
  p = {};
  p.bw_window_s = p.period_s / 2;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
  p = {};
  p.packet_size_bits = 0;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
  p = {};
  p.period_s = -1;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
}

TEST(ControllerAcks, FirstAckInitialisesMin) {
  Controller c({});
  c.AddReceiver(ReceiverId{1});
  const auto seq = c.OnPacketSent(ReceiverId{1}, 0.0);
  EXPECT_EQ(c.OnAck(ReceiverId{1}, seq, 0.020), AckResult::kAccepted);
  const ReceiverStats* r = c.FindReceiver(ReceiverId{1});
  EXPECT_NEAR(*r->d_min, 0.020, 1e-12);
  EXPECT_EQ(r->in_flight, 0);
}

TEST(ControllerAcks, LowerSampleLowersMin) {
  Controller c({});
  c.AddReceiver(ReceiverId{1});
  const auto a = c.OnPacketSent(ReceiverId{1}, 0.0);
  const auto b = c.OnPacketSent(ReceiverId{1}, 1.0);
  c.OnAck(ReceiverId{1}, a, 0.020);
  c.OnAck(ReceiverId{1}, b, 1.018);
  EXPECT_NEAR(*c.FindReceiver(ReceiverId{1})->d_min, 0.018, 1e-12);
}

TEST(ControllerAcks, DuplicateAckCountedOnly) {
  Controller c({});
  c.AddReceiver(ReceiverId{1});
  const auto seq = c.OnPacketSent(ReceiverId{1}, 0.0);
  c.OnAck(ReceiverId{1}, seq, 0.020);
  const ControllerState before = c.state();
  EXPECT_EQ(c.OnAck(ReceiverId{1}, seq, 0.030), AckResult::kUnknownPacket);
  EXPECT_EQ(c.state().unknown_acks, 1);
  EXPECT_EQ(c.state().cumulative_acked, before.cumulative_acked);
  EXPECT_EQ(c.state().cumulative_sent, before.cumulative_sent);
}

TEST(ControllerAcks, UnknownReceiverThrows) {
  Controller c({});
  c.AddReceiver(ReceiverId{1});
  EXPECT_THROW(c.OnPacketSent(ReceiverId{2}, 0.0), std::invalid_argument);
  EXPECT_THROW(c.AddReceiver(ReceiverId{1}), std::invalid_argument);
}

TEST(ControllerLoss, SetsMaxLatency) {
  ControllerParams p;
  Controller c(p);
  c.AddReceiver(ReceiverId{1});
  const auto a = c.OnPacketSent(ReceiverId{1}, 0.0);
  const auto b = c.OnPacketSent(ReceiverId{1}, 0.0);
  c.OnAck(ReceiverId{1}, a, 0.020);
  EXPECT_TRUE(c.OnLoss(ReceiverId{1}, b, 0.120));
  const ReceiverStats* r = c.FindReceiver(ReceiverId{1});
  EXPECT_NEAR(*r->d_max, 0.120, 1e-12);
  EXPECT_NEAR(EstimateMaxQueueDelay(c.state().receivers, p), 0.100, 1e-12);
  EXPECT_EQ(r->in_flight, 0);
  EXPECT_EQ(c.state().cumulative_lost, 1);
  EXPECT_FALSE(c.OnLoss(ReceiverId{1}, b, 0.2));
}

TEST(ControllerLoss, LatestLossOverwrites) {
  Controller c({});
  c.AddReceiver(ReceiverId{1});
  const auto a = c.OnPacketSent(ReceiverId{1}, 0.0);
  const auto b = c.OnPacketSent(ReceiverId{1}, 0.0);
  const auto d = c.OnPacketSent(ReceiverId{1}, 0.0);
  c.OnAck(ReceiverId{1}, a, 0.020);
  c.OnLoss(ReceiverId{1}, b, 0.120);
  c.OnLoss(ReceiverId{1}, d, 0.090);
  EXPECT_NEAR(*c.FindReceiver(ReceiverId{1})->d_max, 0.090, 1e-12);
}

TEST(ControllerLoss, LossBeforeAnyAck) {
  Controller c({});
  c.AddReceiver(ReceiverId{1});
  const auto a = c.OnPacketSent(ReceiverId{1}, 0.0);
  c.OnLoss(ReceiverId{1}, a, 0.150);
  EXPECT_NEAR(*c.FindReceiver(ReceiverId{1})->d_max, 0.150, 1e-12);
  EXPECT_FALSE(ComputeDref(c.state().receivers, c.params()).has_value());
}

TEST(ControllerLoss, ThreeLaterAcksDeclareLoss) {
  Controller c({});
  c.AddReceiver(ReceiverId{1});
  std::vector<std::uint64_t> seqs;
  for (int i = 0; i < 5; ++i)
    seqs.push_back(c.OnPacketSent(ReceiverId{1}, 0.0));
  c.OnAck(ReceiverId{1}, seqs[1], 0.030);
  c.OnAck(ReceiverId{1}, seqs[2], 0.031);
  EXPECT_EQ(c.state().cumulative_lost, 0);
  c.OnAck(ReceiverId{1}, seqs[3], 0.032);
  EXPECT_EQ(c.state().cumulative_lost, 1);
  // The last delivered packet's latency calibrates d_max.
  EXPECT_NEAR(*c.FindReceiver(ReceiverId{1})->d_max, 0.032, 1e-12);
}

TEST(ControllerLoss, TimeoutDeclaresLoss) {
  ControllerParams p;
  p.initial_qmax_offset_s = 0.1;
  p.timeout_factor = 2.0;
  Controller c(p);
  c.AddReceiver(ReceiverId{1});
  const auto a = c.OnPacketSent(ReceiverId{1}, 0.0);
  c.OnPacketSent(ReceiverId{1}, 0.0);
  c.OnAck(ReceiverId{1}, a, 0.020);
  // Timeout is 2 * (20 ms + 100 ms) = 240 ms.
  c.ControlTick(0.20);
  EXPECT_EQ(c.state().cumulative_lost, 0);
  c.ControlTick(0.25);
  EXPECT_EQ(c.state().cumulative_lost, 1);
}

TEST(ControlTick, BootstrapQuota) {
  Controller c({});
  c.AddReceiver(ReceiverId{1});
  const TickSnapshot snap = c.ControlTick(0.0);
  EXPECT_TRUE(snap.bootstrap);
  EXPECT_EQ(snap.quota, 2);
}

TEST(ControlTick, ColdStartAfterFirstAck) {
  ControllerParams p;
  Controller c(p);
  c.AddReceiver(ReceiverId{1});
  c.ControlTick(0.0);
  const auto a = c.OnPacketSent(ReceiverId{1}, 0.0);
  c.OnAck(ReceiverId{1}, a, 0.040);
  const TickSnapshot snap = c.ControlTick(0.05);
  EXPECT_FALSE(snap.bootstrap);
  ASSERT_TRUE(snap.d_ref.has_value());
  EXPECT_NEAR(*snap.d_ref, p.alpha * p.initial_qmax_offset_s, 1e-12);
  // Ack rate 1/s, nothing in flight, d = 0: 1 + 200 * 0.075 = 16.
  EXPECT_EQ(snap.window, 16);
  EXPECT_EQ(snap.quota, 13);
  EXPECT_EQ(c.state().epoch, 2u);
}

TEST(ControllerProperties, RandomEventSequences) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    Controller c({});
    const int m = 1 + static_cast<int>(rng() % 4);
    for (int i = 1; i <= m; ++i)
      c.AddReceiver(ReceiverId{static_cast<std::uint32_t>(i)});
    std::vector<std::pair<ReceiverId, std::uint64_t>> pending;
    std::vector<std::vector<double>> samples(m);
    double now = 0.0;
    for (int step = 0; step < 400; ++step) {
      now += 0.001 * static_cast<double>(rng() % 10);
      const auto action = rng() % 10;
      if (action < 5 || pending.empty()) {
        const ReceiverId id{static_cast<std::uint32_t>(1 + rng() % m)};
        pending.emplace_back(id, c.OnPacketSent(id, now));
      } else if (action < 9) {
        const std::size_t k = rng() % pending.size();
        const auto [id, seq] = pending[k];
        pending.erase(pending.begin() + static_cast<long>(k));
        const double ack_time = now + 0.01 * static_cast<double>(rng() % 5);
        const ReceiverStats* before = c.FindReceiver(id);
        const bool outstanding = before->outstanding.count(seq) == 1;
        const double sent = outstanding ? before->outstanding.at(seq).send_time_s : 0.0;
        if (c.OnAck(id, seq, ack_time) == AckResult::kAccepted)
          samples[id.value - 1].push_back(ack_time - sent);
      } else {
        c.ControlTick(now);
      }

      const ControllerState& s = c.state();
      std::int64_t sum = 0;
      double share_sum = 0.0;
      for (const auto& r : s.receivers) {
        EXPECT_GE(r.in_flight, 0);
        sum += r.in_flight;
        share_sum += r.lambda_sq;
        if (r.d_min && r.d_max)
          EXPECT_GE(*r.d_max, *r.d_min);
        if (r.d_min) {
          for (double x : samples[r.id.value - 1])
            EXPECT_LE(*r.d_min, x + 1e-12);
        }
      }
      EXPECT_EQ(s.InFlight(), sum);
      EXPECT_GE(s.cumulative_sent, s.cumulative_acked);
      EXPECT_GE(s.window_w, 1);
      EXPECT_GE(s.quota_u, 0);
      if (share_sum > 0.0)
        EXPECT_NEAR(share_sum, 1.0, 1e-9);
    }
  }
}

}  // namespace
}  // namespace p2pcc
