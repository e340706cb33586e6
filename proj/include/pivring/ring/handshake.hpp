// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "pivring/ring/clock.hpp"
#include "pivring/ring/frame.hpp"

namespace pivring::ring {

// Single-rail 4-phase handshake between the send unit of one wrapper and the
// receive unit of the next:
//
//   sender   : Idle --req+--> ReqRaised --(sees ack+) req- --> ReqLowered --(sees ack-)--> Idle
//   receiver : Idle --(sees req+, latch free) latch, ack+ --> Acked --(sees req-) ack- --> Idle
//
// A level change made on one side becomes visible to the other side at its
// `sync_cycles`-th clock edge after the change (a synchroniser).

enum class HandshakePhase { Idle, ReqRaised, Acked, ReqLowered };

/// A handshake wire as seen across the clock-domain crossing.
struct Wire {
  bool level = false;
  SimTime visible_at = 0;  // the far side sees `level` from here on, !level before

  bool seen_at(SimTime t) const noexcept { return t >= visible_at ? level : !level; }
};

struct SendUnit {
  HandshakePhase phase = HandshakePhase::Idle;
  Wire req;
  std::optional<RingFrame> latch;
};

struct ReceiveUnit {
  HandshakePhase phase = HandshakePhase::Idle;
  Wire ack;
  std::optional<RingFrame> latch;
};

/// The asynchronous wrapper around every ring module: two independent units.
struct WrapperState {
  ReceiveUnit receive;
  SendUnit send;
};

struct LinkTiming {
  ClockDomain sender;
  ClockDomain receiver;
  int sync_cycles = 2;
};

enum class Side { Sender, Receiver };

struct StepOutcome {
  bool changed = false;
  bool delivered = false;     // receiver latched a frame on this edge
  bool sender_freed = false;  // sender latch released on this edge
  SimTime wake_other = -1;    // edge at which the other side sees the change
};

/// Advances one side of the link on one of its clock edges.
StepOutcome handshake_step(SendUnit& tx, ReceiveUnit& rx, const LinkTiming& timing, Side side, SimTime edge);

}  // namespace pivring::ring
