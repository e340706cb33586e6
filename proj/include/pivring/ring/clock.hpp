// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace pivring::ring {

/// Simulation time in picoseconds.
using SimTime = std::int64_t;

inline constexpr SimTime kPicosPerSecond = 1'000'000'000'000;

/// A free-running clock. Edge k fires at round((k + phase) * period).
struct ClockDomain {
  double frequency_mhz = 100.0;
  double phase_cycles = 0.0;

  double period_ps() const noexcept { return 1e6 / frequency_mhz; }
  SimTime edge_time(std::int64_t k) const noexcept;
  /// Index of the first edge at or after t.
  std::int64_t edge_index(SimTime t) const noexcept;
  /// First edge at or after t.
  SimTime next_edge(SimTime t) const noexcept { return edge_time(edge_index(t)); }
  /// The `cycles`-th edge strictly after t (cycles >= 1).
  SimTime edge_after(SimTime t, std::int64_t cycles) const noexcept;
  /// Duration of `cycles` periods, in picoseconds (rounded).
  SimTime cycles_to_ps(std::int64_t cycles) const noexcept;
};

}  // namespace pivring::ring
