// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pivring {

/// Sensor intensities are 10-bit.
using Intensity = std::uint16_t;
inline constexpr Intensity kMaxIntensity = 1023;

/// Row-major 10-bit grayscale raster.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, Intensity fill = 0);
  /// Takes ownership of `data`; throws DimensionError on a size mismatch and
  /// InputError if any value exceeds kMaxIntensity.
  GrayImage(int width, int height, std::vector<Intensity> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }

  Intensity at(int x, int y) const { return data_[index(x, y)]; }
  void set(int x, int y, Intensity value);

  std::span<const Intensity> data() const noexcept { return data_; }

  /// Copy of the w x h block whose top-left corner is (x0, y0).
  GrayImage crop(int x0, int y0, int w, int h) const;

  bool operator==(const GrayImage&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Intensity> data_;
};

/// One-bit raster packed 32 pixels per word.
///
/// Pixel k (k = y * width + x) lives in word k / 32 at bit k % 32, so the
/// first pixel of a word is its least significant bit. Bits past
/// width * height in the last word are always zero.
class BinaryImage {
 public:
  BinaryImage() = default;
  BinaryImage(int width, int height);

  /// Throws DimensionError if the word count is wrong or the padding bits are set.
  static BinaryImage from_words(int width, int height, std::vector<std::uint32_t> words);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  bool get(int x, int y) const {
    const std::size_t k = bit_index(x, y);
    return (words_[k >> 5] >> (k & 31U)) & 1U;
  }
  void set(int x, int y, bool value);

  std::span<const std::uint32_t> words() const noexcept { return words_; }
  std::size_t count_ones() const;

  BinaryImage crop(int x0, int y0, int w, int h) const;
  BinaryImage complement() const;

  bool operator==(const BinaryImage&) const = default;

 private:
  std::size_t bit_index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint32_t> words_;
};

}  // namespace pivring
