// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

#include "pivring/image.hpp"

namespace pivring::testing {

inline BinaryImage random_binary(int w, int h, std::mt19937_64& rng, double p_one = 0.5) {
  std::bernoulli_distribution bit(p_one);
  BinaryImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) img.set(x, y, bit(rng));
  }
  return img;
}

inline GrayImage random_gray(int w, int h, std::mt19937_64& rng, int max_value = kMaxIntensity) {
  std::uniform_int_distribution<int> v(0, max_value);
  GrayImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) img.set(x, y, static_cast<Intensity>(v(rng)));
  }
  return img;
}

}  // namespace pivring::testing
