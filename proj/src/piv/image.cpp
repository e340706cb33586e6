// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#include "pivring/image.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "pivring/errors.hpp"

namespace pivring {

namespace {

void check_dims(int width, int height) {
  if (width < 0 || height < 0) {
    throw DimensionError("negative image size " + std::to_string(width) + "x" + std::to_string(height));
  }
}

std::size_t word_count(int width, int height) {
  return (static_cast<std::size_t>(width) * static_cast<std::size_t>(height) + 31) / 32;
}

void check_crop(int img_w, int img_h, int x0, int y0, int w, int h) {
  if (x0 < 0 || y0 < 0 || w < 0 || h < 0 || x0 + w > img_w || y0 + h > img_h) {
    throw DimensionError("crop " + std::to_string(w) + "x" + std::to_string(h) + "+" + std::to_string(x0) + "+" +
                         std::to_string(y0) + " exceeds " + std::to_string(img_w) + "x" + std::to_string(img_h));
  }
}

}  // namespace

GrayImage::GrayImage(int width, int height, Intensity fill) : width_(width), height_(height) {
  check_dims(width, height);
  if (fill > kMaxIntensity) throw InputError("intensity " + std::to_string(fill) + " exceeds 10 bits");
  data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

GrayImage::GrayImage(int width, int height, std::vector<Intensity> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dims(width, height);
  if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw DimensionError("pixel count " + std::to_string(data_.size()) + " does not match " + std::to_string(width) +
                         "x" + std::to_string(height));
  }
  auto bad = std::find_if(data_.begin(), data_.end(), [](Intensity v) { return v > kMaxIntensity; });
  if (bad != data_.end()) throw InputError("intensity " + std::to_string(*bad) + " exceeds 10 bits");
}

void GrayImage::set(int x, int y, Intensity value) {
  if (value > kMaxIntensity) throw InputError("intensity " + std::to_string(value) + " exceeds 10 bits");
  data_[index(x, y)] = value;
}

GrayImage GrayImage::crop(int x0, int y0, int w, int h) const {
  check_crop(width_, height_, x0, y0, w, h);
  std::vector<Intensity> out;
  out.reserve(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (int y = y0; y < y0 + h; ++y) {
    auto row = data_.begin() + static_cast<std::ptrdiff_t>(index(x0, y));
    out.insert(out.end(), row, row + w);
  }
  return GrayImage(w, h, std::move(out));
}

BinaryImage::BinaryImage(int width, int height) : width_(width), height_(height) {
  check_dims(width, height);
  words_.assign(word_count(width, height), 0U);
}

BinaryImage BinaryImage::from_words(int width, int height, std::vector<std::uint32_t> words) {
  BinaryImage img(width, height);
  if (words.size() != img.words_.size()) {
    throw DimensionError("expected " + std::to_string(img.words_.size()) + " words for " + std::to_string(width) +
                         "x" + std::to_string(height) + ", got " + std::to_string(words.size()));
  }
  const std::size_t bits = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bits % 32 != 0 && !words.empty()) {
    const std::uint32_t padding = ~((1U << (bits % 32)) - 1U);
    if (words.back() & padding) throw DimensionError("padding bits set in last word");
  }
  img.words_ = std::move(words);
  return img;
}

void BinaryImage::set(int x, int y, bool value) {
  const std::size_t k = bit_index(x, y);
  const std::uint32_t mask = 1U << (k & 31U);
  if (value) {
    words_[k >> 5] |= mask;
  } else {
    words_[k >> 5] &= ~mask;
  }
}

std::size_t BinaryImage::count_ones() const {
  return std::accumulate(words_.begin(), words_.end(), std::size_t{0},
                         [](std::size_t acc, std::uint32_t w) { return acc + static_cast<std::size_t>(std::popcount(w)); });
}

BinaryImage BinaryImage::crop(int x0, int y0, int w, int h) const {
  check_crop(width_, height_, x0, y0, w, h);
  BinaryImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (get(x0 + x, y0 + y)) out.set(x, y, true);
    }
  }
  return out;
}

BinaryImage BinaryImage::complement() const {
  BinaryImage out(width_, height_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
  const std::size_t bits = static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  if (bits % 32 != 0 && !out.words_.empty()) out.words_.back() &= (1U << (bits % 32)) - 1U;
  return out;
}

}  // namespace pivring
