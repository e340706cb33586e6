// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

namespace pivring::ring {

enum class ModuleKind { Control, Acquisition, Storage, Processing };

std::string to_string(ModuleKind kind);

enum class FrameKind : std::uint8_t { Command, Data, Empty };

/// Macro-function identifiers carried by command and data frames.
enum class Opcode : std::uint8_t {
  None = 0,
  StartAcquisition = 1,  // command -> acquisition
  Correlate = 2,         // command -> processing; payload = pair index
  FrameStored = 3,       // data -> control; payload = frame index
  Vector = 4,            // data -> control; payload = packed VectorWord
};

inline constexpr int kNoTarget = -1;

/// One word circulating on the ring.
struct RingFrame {
  FrameKind kind = FrameKind::Empty;
  int target = kNoTarget;
  Opcode opcode = Opcode::None;
  std::uint32_t payload = 0;
  bool accepted = false;
  std::uint64_t id = 0;  // trace identity, not part of the wire format

  static RingFrame empty(std::uint64_t id) { return RingFrame{FrameKind::Empty, kNoTarget, Opcode::None, 0, false, id}; }

  bool operator==(const RingFrame&) const = default;
};

/// 32-bit result word: [31:30] pair tag | [29:22] window | [21:16] dx |
/// [15:10] dy | [9:0] peak. dx and dy are 6-bit two's complement; the tag is
/// the pair index mod 4.
struct VectorWord {
  int pair_tag = 0;
  int window = 0;
  int dx = 0;
  int dy = 0;
  int peak = 0;

  static constexpr int kMaxWindows = 256;
  static constexpr int kMaxShift = 31;
  static constexpr int kMaxPeak = 1023;
  static constexpr int kTagModulus = 4;

  std::uint32_t pack() const;
  static VectorWord unpack(std::uint32_t word);

  bool operator==(const VectorWord&) const = default;
};

}  // namespace pivring::ring
