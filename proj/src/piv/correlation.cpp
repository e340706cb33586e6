// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#include "pivring/correlation.hpp"

#include <bit>
#include <string>

#include "pivring/errors.hpp"

namespace pivring {

namespace {

template <typename Image>
void check_fit(const Image& search, const Image& pattern) {
  if (pattern.width() <= 0 || pattern.height() <= 0 || pattern.width() > search.width() ||
      pattern.height() > search.height()) {
    throw ConfigError("pattern " + std::to_string(pattern.width()) + "x" + std::to_string(pattern.height()) +
                      " does not fit search region " + std::to_string(search.width()) + "x" +
                      std::to_string(search.height()));
  }
}

template <typename Image>
CorrelationPlane empty_plane(const Image& search, const Image& pattern) {
  const int span_x = search.width() - pattern.width();
  const int span_y = search.height() - pattern.height();
  CorrelationPlane plane;
  plane.shifts_x = span_x + 1;
  plane.shifts_y = span_y + 1;
  plane.origin_dx = span_x / 2 - span_x;
  plane.origin_dy = span_y / 2 - span_y;
  plane.values.assign(static_cast<std::size_t>(plane.shifts_x) * static_cast<std::size_t>(plane.shifts_y), 0);
  return plane;
}

// One image row as little-endian 64-bit chunks, plus a zero guard chunk so
// that a 64-bit window starting anywhere in the row can be read.
using RowBits = std::vector<std::uint64_t>;

RowBits row_bits(const BinaryImage& img, int y) {
  RowBits bits(static_cast<std::size_t>(img.width() + 63) / 64 + 1, 0);
  for (int x = 0; x < img.width(); ++x) {
    if (img.get(x, y)) bits[static_cast<std::size_t>(x) >> 6] |= std::uint64_t{1} << (x & 63);
  }
  return bits;
}

std::uint64_t bits_at(const RowBits& row, int offset) {
  const auto chunk = static_cast<std::size_t>(offset) >> 6;
  const int shift = offset & 63;
  std::uint64_t v = row[chunk] >> shift;
  if (shift != 0) v |= row[chunk + 1] << (64 - shift);
  return v;
}

}  // namespace

BinaryImage extract_pattern(const BinaryImage& window, int pattern_size) {
  if (pattern_size <= 0 || pattern_size > window.width() || pattern_size > window.height()) {
    throw ConfigError("pattern size " + std::to_string(pattern_size) + " does not fit a " +
                      std::to_string(window.width()) + "x" + std::to_string(window.height()) + " window");
  }
  const int ox = pattern_offset(window.width(), pattern_size);
  const int oy = pattern_offset(window.height(), pattern_size);
  return window.crop(ox, oy, pattern_size, pattern_size);
}

GrayImage extract_pattern(const GrayImage& window, int pattern_size) {
  if (pattern_size <= 0 || pattern_size > window.width() || pattern_size > window.height()) {
    throw ConfigError("pattern size " + std::to_string(pattern_size) + " does not fit a " +
                      std::to_string(window.width()) + "x" + std::to_string(window.height()) + " window");
  }
  const int ox = pattern_offset(window.width(), pattern_size);
  const int oy = pattern_offset(window.height(), pattern_size);
  return window.crop(ox, oy, pattern_size, pattern_size);
}

CorrelationPlane xcorr_gray(const GrayImage& search, const GrayImage& pattern) {
  check_fit(search, pattern);
  CorrelationPlane plane = empty_plane(search, pattern);
  const int span_x = plane.shifts_x - 1;
  const int span_y = plane.shifts_y - 1;
  for (int iy = 0; iy < plane.shifts_y; ++iy) {
    const int py = span_y - iy;
    for (int ix = 0; ix < plane.shifts_x; ++ix) {
      const int px = span_x - ix;
      std::int64_t sum = 0;
      for (int v = 0; v < pattern.height(); ++v) {
        for (int u = 0; u < pattern.width(); ++u) {
          sum += static_cast<std::int64_t>(search.at(px + u, py + v)) * pattern.at(u, v);
        }
      }
      plane.values[static_cast<std::size_t>(iy) * static_cast<std::size_t>(plane.shifts_x) +
                   static_cast<std::size_t>(ix)] = sum;
    }
  }
  return plane;
}

CorrelationPlane xcorr_binary(const BinaryImage& search, const BinaryImage& pattern) {
  check_fit(search, pattern);
  CorrelationPlane plane = empty_plane(search, pattern);
  const int span_x = plane.shifts_x - 1;
  const int span_y = plane.shifts_y - 1;

  std::vector<RowBits> search_rows;
  search_rows.reserve(static_cast<std::size_t>(search.height()));
  for (int y = 0; y < search.height(); ++y) search_rows.push_back(row_bits(search, y));
  std::vector<RowBits> pattern_rows;
  pattern_rows.reserve(static_cast<std::size_t>(pattern.height()));
  for (int y = 0; y < pattern.height(); ++y) pattern_rows.push_back(row_bits(pattern, y));

  const int chunks = (pattern.width() + 63) / 64;
  const int tail = pattern.width() - (chunks - 1) * 64;
  const std::uint64_t tail_mask = tail == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << tail) - 1;
  const std::int64_t area = static_cast<std::int64_t>(pattern.width()) * pattern.height();

  for (int iy = 0; iy < plane.shifts_y; ++iy) {
    const int py = span_y - iy;
    for (int ix = 0; ix < plane.shifts_x; ++ix) {
      const int px = span_x - ix;
      std::int64_t mismatches = 0;
      for (int v = 0; v < pattern.height(); ++v) {
        const RowBits& srow = search_rows[static_cast<std::size_t>(py + v)];
        const RowBits& prow = pattern_rows[static_cast<std::size_t>(v)];
        for (int c = 0; c < chunks; ++c) {
          std::uint64_t diff = bits_at(srow, px + 64 * c) ^ prow[static_cast<std::size_t>(c)];
          if (c == chunks - 1) diff &= tail_mask;
          mismatches += std::popcount(diff);
        }
      }
      plane.values[static_cast<std::size_t>(iy) * static_cast<std::size_t>(plane.shifts_x) +
                   static_cast<std::size_t>(ix)] = area - mismatches;
    }
  }
  return plane;
}

Displacement peak_displacement(const CorrelationPlane& plane) {
  if (plane.values.empty()) throw ConfigError("empty correlation plane");
  Displacement best{plane.origin_dx, plane.origin_dy, plane.values.front(), 0};
  long best_mag = static_cast<long>(best.dx) * best.dx + static_cast<long>(best.dy) * best.dy;
  for (int iy = 0; iy < plane.shifts_y; ++iy) {
    for (int ix = 0; ix < plane.shifts_x; ++ix) {
      const std::int64_t v = plane.at(ix, iy);
      const int dx = plane.origin_dx + ix;
      const int dy = plane.origin_dy + iy;
      const long mag = static_cast<long>(dx) * dx + static_cast<long>(dy) * dy;
      // row-major scan, so on a full tie the earlier entry is kept
      if (v > best.peak_value || (v == best.peak_value && mag < best_mag)) {
        best = {dx, dy, v, 0};
        best_mag = mag;
      }
    }
  }
  return best;
}

}  // namespace pivring
