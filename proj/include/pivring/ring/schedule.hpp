// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace pivring::ring {

/// Round-robin window assignment: window w goes to processing module
/// (w + offset) mod n. Loads differ by at most one.
std::vector<int> control_schedule(int n_processing, int window_count, int offset = 0);

/// Offset used for a given image pair. Rotating by pair * window_count makes
/// every module's load over any n consecutive pairs exactly window_count.
int schedule_offset(int n_processing, int window_count, int pair);

/// Number of windows each module receives.
std::vector<int> schedule_loads(const std::vector<int>& assignment, int n_processing);

}  // namespace pivring::ring
