// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pivring/ring/clock.hpp"
#include "pivring/ring/handshake.hpp"

namespace pivring::ring {
namespace {

TEST(Clock, Edges) {
  const ClockDomain c{100.0, 0.0};  // 10 ns
  EXPECT_EQ(c.edge_time(0), 0);
  EXPECT_EQ(c.edge_time(3), 30'000);
  EXPECT_EQ(c.next_edge(30'000), 30'000);
  EXPECT_EQ(c.next_edge(30'001), 40'000);
  EXPECT_EQ(c.edge_after(30'000, 1), 40'000);
  EXPECT_EQ(c.edge_after(30'001, 2), 50'000);
  EXPECT_EQ(c.cycles_to_ps(6152), 61'520'000);
  const ClockDomain shifted{150.0, 0.5};
  EXPECT_EQ(shifted.edge_time(0), 3333);
  EXPECT_EQ(shifted.next_edge(0), 3333);
  EXPECT_EQ(shifted.edge_time(1), 10'000);
}

TEST(Clock, NextEdgeIsFirstEdgeAtOrAfter) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> f(1.0, 200.0);
  std::uniform_int_distribution<SimTime> t(0, 50'000'000);
  for (int i = 0; i < 2000; ++i) {
    const ClockDomain c{f(rng), 0.0};
    const SimTime at = t(rng);
    const SimTime e = c.next_edge(at);
    EXPECT_GE(e, at);
    EXPECT_LT(c.edge_time(c.edge_index(at) - 1), at);
    EXPECT_GT(c.edge_after(at, 1), at);
    EXPECT_EQ(c.edge_after(at, 3), c.edge_time(c.edge_index(c.edge_after(at, 1)) + 2));
  }
}

struct Transfer {
  std::vector<std::uint64_t> received;
  std::size_t sender_edges = 0;
};

// Drives one link over the merged edge stream of two free-running clocks.
// Edge times are generated here rather than by ClockDomain.
Transfer run_link(double f_tx, double f_rx, int frames, int sync, std::mt19937_64& rng, double consume_p) {
  const ClockDomain ctx{f_tx, 0.0};
  const ClockDomain crx{f_rx, 0.0};
  const LinkTiming timing{ctx, crx, sync};
  SendUnit tx;
  ReceiveUnit rx;
  std::bernoulli_distribution consume(consume_p);
  Transfer out;
  std::uint64_t next = 0;
  std::int64_t ks = 0;
  std::int64_t kr = 0;
  const auto edge = [](double mhz, std::int64_t k) { return std::llround(static_cast<double>(k) * 1e6 / mhz); };
  while (out.received.size() < static_cast<std::size_t>(frames) && ks + kr < 50'000'000) {
    const SimTime ts = edge(f_tx, ks);
    const SimTime tr = edge(f_rx, kr);
    if (ts <= tr) {
      if (!tx.latch && next < static_cast<std::uint64_t>(frames)) tx.latch = RingFrame::empty(next++);
      handshake_step(tx, rx, timing, Side::Sender, ts);
      ++ks;
      ++out.sender_edges;
    } else {
      handshake_step(tx, rx, timing, Side::Receiver, tr);
      if (rx.latch && consume(rng)) {
        out.received.push_back(rx.latch->id);
        rx.latch.reset();
        handshake_step(tx, rx, timing, Side::Receiver, tr);
      }
      ++kr;
    }
  }
  return out;
}

void expect_exact_delivery(const Transfer& t, int frames) {
  ASSERT_EQ(t.received.size(), static_cast<std::size_t>(frames));
  for (int i = 0; i < frames; ++i) ASSERT_EQ(t.received[static_cast<std::size_t>(i)], static_cast<std::uint64_t>(i));
}

TEST(Handshake, MismatchedClocksDeliverInOrder) {
  std::mt19937_64 rng(10);
  expect_exact_delivery(run_link(10.0, 150.0, 10'000, 2, rng, 1.0), 10'000);
  expect_exact_delivery(run_link(150.0, 10.0, 10'000, 2, rng, 0.5), 10'000);
}

TEST(Handshake, RandomClockPairsProperty) {
  std::mt19937_64 rng(20);
  std::uniform_real_distribution<double> f(1.0, 200.0);
  std::uniform_int_distribution<int> sync(1, 3);
  for (int pair = 0; pair < 20; ++pair) {
    const double a = f(rng);
    const double b = f(rng);
    expect_exact_delivery(run_link(a, b, 500, sync(rng), rng, 0.6), 500);
  }
}

TEST(Handshake, BlockedReceiverHoldsSender) {
  const ClockDomain c{100.0, 0.0};
  const LinkTiming timing{c, c, 2};
  SendUnit tx;
  ReceiveUnit rx;
  tx.latch = RingFrame::empty(1);
  for (std::int64_t k = 0; k < 40; ++k) {
    handshake_step(tx, rx, timing, Side::Sender, c.edge_time(k));
    handshake_step(tx, rx, timing, Side::Receiver, c.edge_time(k));
    if (!tx.latch) tx.latch = RingFrame::empty(2);
  }
  // frame 1 sits in the receive latch, frame 2 waits in the send unit
  ASSERT_TRUE(rx.latch);
  EXPECT_EQ(rx.latch->id, 1u);
  ASSERT_TRUE(tx.latch);
  EXPECT_EQ(tx.latch->id, 2u);
  EXPECT_EQ(tx.phase, HandshakePhase::ReqRaised);
}

TEST(Handshake, PhaseSequenceAndSynchroniserDelay) {
  const ClockDomain c{100.0, 0.0};
  const LinkTiming timing{c, c, 2};
  SendUnit tx;
  ReceiveUnit rx;
  tx.latch = RingFrame::empty(7);
  StepOutcome o = handshake_step(tx, rx, timing, Side::Sender, 0);
  EXPECT_EQ(tx.phase, HandshakePhase::ReqRaised);
  EXPECT_EQ(o.wake_other, 20'000);  // two receiver edges later
  o = handshake_step(tx, rx, timing, Side::Receiver, 10'000);
  EXPECT_FALSE(o.delivered);  // not yet visible
  o = handshake_step(tx, rx, timing, Side::Receiver, 20'000);
  EXPECT_TRUE(o.delivered);
  EXPECT_EQ(rx.phase, HandshakePhase::Acked);
  o = handshake_step(tx, rx, timing, Side::Sender, 40'000);
  EXPECT_TRUE(o.sender_freed);
  EXPECT_EQ(tx.phase, HandshakePhase::ReqLowered);
  handshake_step(tx, rx, timing, Side::Receiver, 60'000);
  EXPECT_EQ(rx.phase, HandshakePhase::Idle);
  handshake_step(tx, rx, timing, Side::Sender, 80'000);
  EXPECT_EQ(tx.phase, HandshakePhase::Idle);
}

}  // namespace
}  // namespace pivring::ring
