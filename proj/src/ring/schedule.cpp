// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#include "pivring/ring/schedule.hpp"

#include "pivring/errors.hpp"

namespace pivring::ring {

std::vector<int> control_schedule(int n_processing, int window_count, int offset) {
  if (n_processing < 1 || window_count < 1) throw ConfigError("schedule needs at least one module and one window");
  std::vector<int> owner(static_cast<std::size_t>(window_count));
  for (int w = 0; w < window_count; ++w) owner[static_cast<std::size_t>(w)] = (w + offset) % n_processing;
  return owner;
}

int schedule_offset(int n_processing, int window_count, int pair) {
  const auto n = static_cast<long long>(n_processing);
  return static_cast<int>((static_cast<long long>(pair) * window_count) % n);
}

std::vector<int> schedule_loads(const std::vector<int>& assignment, int n_processing) {
  std::vector<int> loads(static_cast<std::size_t>(n_processing), 0);
  for (int m : assignment) ++loads.at(static_cast<std::size_t>(m));
  return loads;
}

}  // namespace pivring::ring
