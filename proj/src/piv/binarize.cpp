// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#include "pivring/binarize.hpp"

#include <cstdint>

#include "pivring/errors.hpp"

namespace pivring {

BinaryImage binarize_global(const GrayImage& img, Intensity threshold) {
  BinaryImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (img.at(x, y) >= threshold) out.set(x, y, true);
    }
  }
  return out;
}

Intensity window_mean(const GrayImage& img, const WindowOrigin& origin, int window_size) {
  std::uint64_t sum = 0;
  for (int y = origin.y; y < origin.y + window_size; ++y) {
    for (int x = origin.x; x < origin.x + window_size; ++x) sum += img.at(x, y);
  }
  const std::uint64_t n = static_cast<std::uint64_t>(window_size) * static_cast<std::uint64_t>(window_size);
  return static_cast<Intensity>((2 * sum + n) / (2 * n));
}

BinaryImage binarize_adaptive(const GrayImage& img, const WindowGrid& grid) {
  if (grid.width() != img.width() || grid.height() != img.height()) {
    throw DimensionError("window grid covers " + std::to_string(grid.width()) + "x" + std::to_string(grid.height()) +
                         " but image is " + std::to_string(img.width()) + "x" + std::to_string(img.height()));
  }
  BinaryImage out(img.width(), img.height());
  for (const auto& origin : grid.origins) {
    const Intensity threshold = window_mean(img, origin, grid.window_size);
    for (int y = origin.y; y < origin.y + grid.window_size; ++y) {
      for (int x = origin.x; x < origin.x + grid.window_size; ++x) {
        if (img.at(x, y) >= threshold) out.set(x, y, true);
      }
    }
  }
  return out;
}

}  // namespace pivring
