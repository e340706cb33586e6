// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "pivring/image.hpp"

namespace pivring {

/// Correlation sums indexed by candidate displacement.
///
/// Entry (ix, iy) holds F for the displacement (origin_dx + ix, origin_dy + iy);
/// values are stored row-major (dy outer, dx inner).
struct CorrelationPlane {
  int shifts_x = 0;
  int shifts_y = 0;
  int origin_dx = 0;
  int origin_dy = 0;
  std::vector<std::int64_t> values;

  std::int64_t at(int ix, int iy) const {
    return values[static_cast<std::size_t>(iy) * static_cast<std::size_t>(shifts_x) + static_cast<std::size_t>(ix)];
  }
  /// Value for a displacement, which must lie inside the plane.
  std::int64_t at_displacement(int dx, int dy) const { return at(dx - origin_dx, dy - origin_dy); }

  bool operator==(const CorrelationPlane&) const = default;
};

struct Displacement {
  int dx = 0;
  int dy = 0;
  std::int64_t peak_value = 0;
  int window_index = 0;

  bool operator==(const Displacement&) const = default;
};

/// Offset of a centred pattern inside a window: (window - pattern) / 2.
constexpr int pattern_offset(int window_size, int pattern_size) { return (window_size - pattern_size) / 2; }

/// Centred pattern_size x pattern_size block of a square window.
/// Throws ConfigError if the pattern does not fit.
BinaryImage extract_pattern(const BinaryImage& window, int pattern_size);
GrayImage extract_pattern(const GrayImage& window, int pattern_size);

// The pattern is assumed to have been cut from the centred position of the
// second frame's window; the search region is the first frame's window. For a
// displacement d the pattern is laid at placement (c - d) inside the search
// region, c being the centred offset, so a particle that moved by d between
// the frames lines up with itself. Only placements fully inside the search
// region are evaluated: (W - P + 1)^2 entries.

/// Product correlation over grey levels.
CorrelationPlane xcorr_gray(const GrayImage& search, const GrayImage& pattern);

/// Match-count (XNOR) correlation, evaluated with 64-bit row words and popcount.
CorrelationPlane xcorr_binary(const BinaryImage& search, const BinaryImage& pattern);

/// Arg-max of the plane; ties go to the smallest dx^2 + dy^2, then to the
/// first entry in row-major order.
Displacement peak_displacement(const CorrelationPlane& plane);

}  // namespace pivring
