// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#include "pivring/windows.hpp"

#include <string>

#include "pivring/errors.hpp"

namespace pivring {

double WindowGrid::center_x(int index) const { return origins.at(static_cast<std::size_t>(index)).x + window_size / 2.0; }

double WindowGrid::center_y(int index) const { return origins.at(static_cast<std::size_t>(index)).y + window_size / 2.0; }

WindowGrid tile_windows(int width, int height, int window_size) {
  if (window_size <= 0) throw DimensionError("window size must be positive, got " + std::to_string(window_size));
  if (width <= 0 || width % window_size != 0) {
    throw DimensionError("width " + std::to_string(width) + " is not a multiple of window size " +
                         std::to_string(window_size));
  }
  if (height <= 0 || height % window_size != 0) {
    throw DimensionError("height " + std::to_string(height) + " is not a multiple of window size " +
                         std::to_string(window_size));
  }
  WindowGrid grid;
  grid.window_size = window_size;
  grid.cols = width / window_size;
  grid.rows = height / window_size;
  grid.origins.reserve(static_cast<std::size_t>(grid.cols) * static_cast<std::size_t>(grid.rows));
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) grid.origins.push_back({c * window_size, r * window_size});
  }
  return grid;
}

}  // namespace pivring
