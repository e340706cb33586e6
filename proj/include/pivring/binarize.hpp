// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "pivring/image.hpp"
#include "pivring/windows.hpp"

namespace pivring {

/// Bit is set iff pixel >= threshold.
BinaryImage binarize_global(const GrayImage& img, Intensity threshold);

/// Mean intensity of one window, rounded half up.
Intensity window_mean(const GrayImage& img, const WindowOrigin& origin, int window_size);

/// Per-window thresholding: every pixel is compared (>=) against the mean of
/// the window that contains it. The grid must tile the image exactly.
BinaryImage binarize_adaptive(const GrayImage& img, const WindowGrid& grid);

}  // namespace pivring
