// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace pivring {

struct WindowOrigin {
  int x = 0;
  int y = 0;
  bool operator==(const WindowOrigin&) const = default;
};

/// Non-overlapping square interrogation windows tiling an image, listed in
/// row-major order (left to right, then top to bottom).
struct WindowGrid {
  int window_size = 0;
  int cols = 0;
  int rows = 0;
  std::vector<WindowOrigin> origins;

  int count() const noexcept { return static_cast<int>(origins.size()); }
  int width() const noexcept { return cols * window_size; }
  int height() const noexcept { return rows * window_size; }

  /// Pixel-centre coordinates of window `index`, (x0 + ws/2, y0 + ws/2).
  double center_x(int index) const;
  double center_y(int index) const;

  bool operator==(const WindowGrid&) const = default;
};

/// Throws DimensionError naming the axis that `window_size` does not divide.
WindowGrid tile_windows(int width, int height, int window_size);

}  // namespace pivring
