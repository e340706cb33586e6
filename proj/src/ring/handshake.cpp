// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#include "pivring/ring/handshake.hpp"

namespace pivring::ring {

namespace {

SimTime drive(Wire& wire, bool level, const ClockDomain& observer, int sync_cycles, SimTime edge) {
  wire.level = level;
  wire.visible_at = observer.edge_after(edge, sync_cycles);
  return wire.visible_at;
}

StepOutcome sender_step(SendUnit& tx, const ReceiveUnit& rx, const LinkTiming& timing, SimTime edge) {
  StepOutcome out;
  const bool ack = rx.ack.seen_at(edge);
  if (tx.phase == HandshakePhase::ReqRaised && ack) {
    out.wake_other = drive(tx.req, false, timing.receiver, timing.sync_cycles, edge);
    tx.latch.reset();
    tx.phase = HandshakePhase::ReqLowered;
    out.changed = true;
    out.sender_freed = true;
    return out;
  }
  if (tx.phase == HandshakePhase::ReqLowered && !ack) {
    tx.phase = HandshakePhase::Idle;
    out.changed = true;
  }
  if (tx.phase == HandshakePhase::Idle && tx.latch && !ack) {
    out.wake_other = drive(tx.req, true, timing.receiver, timing.sync_cycles, edge);
    tx.phase = HandshakePhase::ReqRaised;
    out.changed = true;
  }
  return out;
}

StepOutcome receiver_step(const SendUnit& tx, ReceiveUnit& rx, const LinkTiming& timing, SimTime edge) {
  StepOutcome out;
  const bool req = tx.req.seen_at(edge);
  if (rx.phase == HandshakePhase::Idle && req && !rx.latch) {
    // single-rail: data is stable on the bus while req is high
    rx.latch = tx.latch;
    out.wake_other = drive(rx.ack, true, timing.sender, timing.sync_cycles, edge);
    rx.phase = HandshakePhase::Acked;
    out.changed = true;
    out.delivered = true;
  } else if (rx.phase == HandshakePhase::Acked && !req) {
    out.wake_other = drive(rx.ack, false, timing.sender, timing.sync_cycles, edge);
    rx.phase = HandshakePhase::Idle;
    out.changed = true;
  }
  return out;
}

}  // namespace

StepOutcome handshake_step(SendUnit& tx, ReceiveUnit& rx, const LinkTiming& timing, Side side, SimTime edge) {
  return side == Side::Sender ? sender_step(tx, rx, timing, edge) : receiver_step(tx, rx, timing, edge);
}

}  // namespace pivring::ring
