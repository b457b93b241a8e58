#include <vector>

#include <gtest/gtest.h>

#include "p2pcc/traffic/block_source.h"
#include "p2pcc/traffic/tcp_bic.h"
#include "p2pcc/traffic/tcp_reno.h"

namespace p2pcc {
namespace {

const std::vector<ReceiverId> kTwo{ReceiverId{1}, ReceiverId{2}};

TEST(BlockSource, SequentialFill) {
  BlockSource src(40, kTwo);
  const auto pkts = src.NextPackets(100);
  ASSERT_EQ(pkts.size(), 100u);
  for (int i = 0; i < 40; ++i) {
    EXPECT_EQ(pkts[i].receiver, ReceiverId{1});
    EXPECT_EQ(pkts[i].block_id, 0u);
    EXPECT_EQ(pkts[i].index_in_block, i);
  }
  for (int i = 40; i < 80; ++i) {
    EXPECT_EQ(pkts[i].receiver, ReceiverId{2});
    EXPECT_EQ(pkts[i].block_id, 1u);
  }
  for (int i = 80; i < 100; ++i) {
    EXPECT_EQ(pkts[i].receiver, ReceiverId{1});
    EXPECT_EQ(pkts[i].block_id, 2u);
  }
}

TEST(BlockSource, ZeroQuota) {
  BlockSource src(40, kTwo);
  EXPECT_TRUE(src.NextPackets(0).empty());
}

TEST(BlockSource, FiniteBacklogExhausts) {
  BlockSource src(40, kTwo, 1);
  EXPECT_EQ(src.NextPackets(100).size(), 40u);
  EXPECT_TRUE(src.exhausted());
  EXPECT_TRUE(src.NextPackets(10).empty());
}

TEST(BlockSource, BlocksContinueAcrossCalls) {
  BlockSource src(5, kTwo);
  std::vector<BlockPacket> all;
  for (int q : {3, 4, 1, 7, 0, 5}) {
    const auto part = src.NextPackets(q);
    all.insert(all.end(), part.begin(), part.end());
  }
  ASSERT_EQ(all.size(), 20u);
  for (std::size_t i = 1; i < all.size(); ++i) {
    // Never interleaved: block ids are non-decreasing, each block complete.
    ASSERT_GE(all[i].block_id, all[i - 1].block_id);
    if (all[i].block_id == all[i - 1].block_id)
      EXPECT_EQ(all[i].index_in_block, all[i - 1].index_in_block + 1);
    else
      EXPECT_EQ(all[i - 1].index_in_block, 4);
  }
}

TEST(Reno, SlowStartDoublesPerRtt) {
  TcpRenoFlow flow;
  ASSERT_DOUBLE_EQ(flow.cwnd(), 2.0);
  flow.OnAck();
  flow.OnAck();
  EXPECT_DOUBLE_EQ(flow.cwnd(), 4.0);
  EXPECT_EQ(flow.phase(), TcpPhase::kSlowStart);
}

TEST(Reno, TripleDuplicateHalves) {
  RenoParams p;
  p.initial_cwnd = 10;
  p.initial_ssthresh = 8;
  TcpRenoFlow flow(p);
  ASSERT_EQ(flow.phase(), TcpPhase::kCongestionAvoidance);
  flow.OnLoss(LossKind::kTripleDuplicate);
  EXPECT_DOUBLE_EQ(flow.cwnd(), 5.0);
  EXPECT_DOUBLE_EQ(flow.ssthresh(), 5.0);
  EXPECT_EQ(flow.phase(), TcpPhase::kFastRecovery);
  flow.OnRecoveryExit();
  EXPECT_EQ(flow.phase(), TcpPhase::kCongestionAvoidance);
}

TEST(Reno, TimeoutResetsToOne) {
  RenoParams p;
  p.initial_cwnd = 20;
  TcpRenoFlow flow(p);
  flow.OnLoss(LossKind::kTimeout);
  EXPECT_DOUBLE_EQ(flow.cwnd(), 1.0);
  EXPECT_DOUBLE_EQ(flow.ssthresh(), 10.0);
  EXPECT_EQ(flow.phase(), TcpPhase::kSlowStart);
}

TEST(Reno, SsthreshFloor) {
  RenoParams p;
  p.initial_cwnd = 3;
  TcpRenoFlow flow(p);
  flow.OnLoss(LossKind::kTripleDuplicate);
  EXPECT_DOUBLE_EQ(flow.ssthresh(), 2.0);
}

TEST(Reno, CongestionAvoidanceGrowsAtMostOnePerRtt) {
  for (double start : {2.0, 10.0, 37.5, 200.0}) {
    RenoParams p;
    p.initial_cwnd = start;
    p.initial_ssthresh = 2;
    TcpRenoFlow flow(p);
    const int acks_per_rtt = static_cast<int>(flow.cwnd());
    for (int i = 0; i < acks_per_rtt; ++i)
      flow.OnAck();
    EXPECT_LE(flow.cwnd() - start, 1.0 + 1e-12) << start;
    EXPECT_GT(flow.cwnd(), start);
  }
}

TEST(Reno, WindowCap) {
  RenoParams p;
  p.max_cwnd = 5;
  TcpRenoFlow flow(p);
  for (int i = 0; i < 50; ++i)
    flow.OnAck();
  EXPECT_DOUBLE_EQ(flow.cwnd(), 5.0);
}

TEST(Bic, BinarySearchTowardMidpoint) {
  TcpBicFlow flow;
  flow.SetState(50, 100);
  EXPECT_DOUBLE_EQ(flow.IncrementPerRtt(), 25.0);
}

TEST(Bic, IncrementCappedBySmax) {
  TcpBicFlow flow;
  flow.SetState(50, 400);
  EXPECT_DOUBLE_EQ(flow.IncrementPerRtt(), 32.0);
}

TEST(Bic, ProbingPastMax) {
  TcpBicFlow flow;
  flow.SetState(100, 100);
  EXPECT_DOUBLE_EQ(flow.IncrementPerRtt(), 1.0);
  const double before = flow.cwnd();
  for (int i = 0; i < 100; ++i)
    flow.OnAck();
  EXPECT_GT(flow.cwnd(), before);
  flow.SetState(120, 100);
  EXPECT_DOUBLE_EQ(flow.IncrementPerRtt(), 20.0);
}

TEST(Bic, LossSetsMaxAndDecreases) {
  TcpBicFlow flow;
  flow.SetState(100, 0);
  flow.OnLoss(LossKind::kTripleDuplicate);
  EXPECT_DOUBLE_EQ(flow.w_max(), 100.0);
  EXPECT_DOUBLE_EQ(flow.cwnd(), 87.5);
  // Fast convergence: a loss below the previous max lowers it further.
  flow.OnRecoveryExit();
  flow.OnLoss(LossKind::kTripleDuplicate);
  EXPECT_DOUBLE_EQ(flow.w_max(), 87.5 * 1.875 / 2.0);
}

TEST(Bic, LowWindowBehavesLikeReno) {
  TcpBicFlow flow;
  flow.SetState(10, 100);
  EXPECT_DOUBLE_EQ(flow.IncrementPerRtt(), 1.0);
}

}  // namespace
}  // namespace p2pcc
