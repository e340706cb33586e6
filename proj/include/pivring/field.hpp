// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "pivring/correlation.hpp"
#include "pivring/image.hpp"
#include "pivring/windows.hpp"

namespace pivring {

enum class Binarization { Global, Adaptive };

enum class TieBreak { SmallestMagnitude };

struct PivConfig {
  int window_size = 32;
  int pattern_size = 16;
  Binarization binarization = Binarization::Global;
  Intensity threshold = 512;  // used by Binarization::Global
  TieBreak tie_break = TieBreak::SmallestMagnitude;

  /// Throws ConfigError.
  void validate() const;
  /// Number of tested shifts per axis.
  int search_range() const noexcept { return window_size - pattern_size + 1; }
  /// Largest |dx| or |dy| that can be reported.
  int max_shift() const noexcept;
};

struct VectorField {
  WindowGrid grid;
  std::vector<Displacement> vectors;

  bool operator==(const VectorField&) const = default;
};

BinaryImage binarize(const GrayImage& img, const WindowGrid& grid, const PivConfig& cfg);

/// Displacement of one interrogation window between two binarised frames.
Displacement correlate_window(const BinaryImage& frame1, const BinaryImage& frame2, const WindowGrid& grid,
                              int window_index, const PivConfig& cfg);

/// Full-field binary PIV. Windows are evaluated in parallel; the result does
/// not depend on evaluation order.
VectorField compute_field(const GrayImage& frame1, const GrayImage& frame2, const PivConfig& cfg);

}  // namespace pivring
