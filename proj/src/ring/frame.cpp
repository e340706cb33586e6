// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#include "pivring/ring/frame.hpp"

#include "pivring/errors.hpp"

namespace pivring::ring {

std::string to_string(ModuleKind kind) {
  switch (kind) {
    case ModuleKind::Control:
      return "control";
    case ModuleKind::Acquisition:
      return "acquisition";
    case ModuleKind::Storage:
      return "storage";
    case ModuleKind::Processing:
      return "processing";
  }
  return "unknown";
}

namespace {

std::uint32_t field(int value, int bits) { return static_cast<std::uint32_t>(value) & ((1U << bits) - 1U); }

int signed_field(std::uint32_t raw, int bits) {
  const int v = static_cast<int>(raw & ((1U << bits) - 1U));
  return v >= (1 << (bits - 1)) ? v - (1 << bits) : v;
}

}  // namespace

std::uint32_t VectorWord::pack() const {
  if (pair_tag < 0 || pair_tag >= kTagModulus || window < 0 || window >= kMaxWindows || dx < -kMaxShift || dx > kMaxShift || dy < -kMaxShift ||
      dy > kMaxShift || peak < 0 || peak > kMaxPeak) {
    throw ConfigError("vector does not fit a 32-bit result word");
  }
  return (field(pair_tag, 2) << 30) | (field(window, 8) << 22) | (field(dx, 6) << 16) | (field(dy, 6) << 10) |
         field(peak, 10);
}

VectorWord VectorWord::unpack(std::uint32_t word) {
  VectorWord v;
  v.pair_tag = static_cast<int>(word >> 30);
  v.window = static_cast<int>((word >> 22) & 0xFFU);
  v.dx = signed_field(word >> 16, 6);
  v.dy = signed_field(word >> 10, 6);
  v.peak = static_cast<int>(word & 0x3FFU);
  return v;
}

}  // namespace pivring::ring
