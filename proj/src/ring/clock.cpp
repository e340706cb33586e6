// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#include "pivring/ring/clock.hpp"

#include <cmath>

namespace pivring::ring {

SimTime ClockDomain::edge_time(std::int64_t k) const noexcept {
  return std::llround((static_cast<double>(k) + phase_cycles) * period_ps());
}

std::int64_t ClockDomain::edge_index(SimTime t) const noexcept {
  auto k = static_cast<std::int64_t>(std::ceil(static_cast<double>(t) / period_ps() - phase_cycles));
  if (k < 0) k = 0;
  // rounding in edge_time can put the estimate one edge off either way
  while (edge_time(k) < t) ++k;
  while (k > 0 && edge_time(k - 1) >= t) --k;
  return k;
}

SimTime ClockDomain::edge_after(SimTime t, std::int64_t cycles) const noexcept {
  std::int64_t k = edge_index(t);
  if (edge_time(k) == t) ++k;
  return edge_time(k + cycles - 1);
}

SimTime ClockDomain::cycles_to_ps(std::int64_t cycles) const noexcept {
  return std::llround(static_cast<double>(cycles) * period_ps());
}

}  // namespace pivring::ring
