// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#include "pivring/field.hpp"

#include <algorithm>
#include <execution>
#include <numeric>
#include <string>

#include "pivring/binarize.hpp"
#include "pivring/errors.hpp"

namespace pivring {

void PivConfig::validate() const {
  if (window_size <= 0) throw ConfigError("window size must be positive");
  if (pattern_size <= 0) throw ConfigError("pattern size must be positive");
  if (pattern_size > window_size) {
    throw ConfigError("pattern size " + std::to_string(pattern_size) + " exceeds window size " +
                      std::to_string(window_size));
  }
  if (threshold > kMaxIntensity) throw ConfigError("threshold exceeds 10 bits");
}

int PivConfig::max_shift() const noexcept { return (window_size - pattern_size + 1) / 2; }

BinaryImage binarize(const GrayImage& img, const WindowGrid& grid, const PivConfig& cfg) {
  switch (cfg.binarization) {
    case Binarization::Adaptive:
      return binarize_adaptive(img, grid);
    case Binarization::Global:
      break;
  }
  return binarize_global(img, cfg.threshold);
}

Displacement correlate_window(const BinaryImage& frame1, const BinaryImage& frame2, const WindowGrid& grid,
                              int window_index, const PivConfig& cfg) {
  const WindowOrigin& o = grid.origins.at(static_cast<std::size_t>(window_index));
  const BinaryImage search = frame1.crop(o.x, o.y, grid.window_size, grid.window_size);
  const BinaryImage pattern = extract_pattern(frame2.crop(o.x, o.y, grid.window_size, grid.window_size),
                                              cfg.pattern_size);
  Displacement d = peak_displacement(xcorr_binary(search, pattern));
  d.window_index = window_index;
  return d;
}

VectorField compute_field(const GrayImage& frame1, const GrayImage& frame2, const PivConfig& cfg) {
  cfg.validate();
  if (frame1.width() != frame2.width() || frame1.height() != frame2.height()) {
    throw DimensionError("frame sizes differ: " + std::to_string(frame1.width()) + "x" +
                         std::to_string(frame1.height()) + " vs " + std::to_string(frame2.width()) + "x" +
                         std::to_string(frame2.height()));
  }
  VectorField field;
  field.grid = tile_windows(frame1.width(), frame1.height(), cfg.window_size);
  const BinaryImage b1 = binarize(frame1, field.grid, cfg);
  const BinaryImage b2 = binarize(frame2, field.grid, cfg);

  field.vectors.resize(static_cast<std::size_t>(field.grid.count()));
  std::vector<int> indices(field.vectors.size());
  std::iota(indices.begin(), indices.end(), 0);
  std::for_each(std::execution::par, indices.begin(), indices.end(), [&](int i) {
    field.vectors[static_cast<std::size_t>(i)] = correlate_window(b1, b2, field.grid, i, cfg);
  });
  return field;
}

}  // namespace pivring
