// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "pivring/errors.hpp"
#include "pivring/field.hpp"
#include "pivring/synth.hpp"

namespace pivring {
namespace {

TEST(PivConfig, Validation) {
  PivConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.search_range(), 17);
  EXPECT_EQ(cfg.max_shift(), 8);
  cfg.pattern_size = 33;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.pattern_size = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(ComputeField, StandardFrameGivesEightyVectors) {
  std::mt19937_64 rng(1);
  const GrayImage f = testing::random_gray(320, 256, rng);
  const VectorField field = compute_field(f, f, PivConfig{});
  EXPECT_EQ(field.vectors.size(), 80u);
  for (int i = 0; i < 80; ++i) {
    EXPECT_EQ(field.vectors[static_cast<std::size_t>(i)].window_index, i);
    EXPECT_EQ(field.vectors[static_cast<std::size_t>(i)].dx, 0);
    EXPECT_EQ(field.vectors[static_cast<std::size_t>(i)].dy, 0);
  }
}

TEST(ComputeField, SizeMismatchIsDimensionError) {
  EXPECT_THROW(compute_field(GrayImage(64, 64), GrayImage(64, 32), PivConfig{}), DimensionError);
  EXPECT_THROW(compute_field(GrayImage(60, 64), GrayImage(60, 64), PivConfig{}), DimensionError);
}

TEST(ComputeField, TranslatedTextureRecoversMotion) {
  // frame 2 is frame 1 moved right by 3 and down by 1
  std::mt19937_64 rng(2);
  const GrayImage f1 = testing::random_gray(320, 256, rng);
  GrayImage f2(320, 256);
  for (int y = 0; y < 256; ++y) {
    for (int x = 0; x < 320; ++x) f2.set(x, y, f1.at(std::max(0, x - 3), std::max(0, y - 1)));
  }
  const VectorField field = compute_field(f1, f2, PivConfig{});
  for (const auto& d : field.vectors) {
    ASSERT_EQ(d.dx, 3);
    ASSERT_EQ(d.dy, 1);
    ASSERT_EQ(d.peak_value, 256);
  }
}

TEST(ComputeField, Deterministic) {
  const synth::ParticleField pf = synth::seed_particles(320, 256, 10, 99);
  const auto [f1, f2] = synth::render_pair(pf, synth::FlowSpec::uniform(-2, 5), synth::RenderConfig{});
  PivConfig cfg;
  cfg.binarization = Binarization::Adaptive;
  const VectorField a = compute_field(f1, f2, cfg);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(compute_field(f1, f2, cfg), a);
}

// Particles whose frame-2 disc lies wholly inside the window's pattern block.
int interior_particles(const synth::ParticleField& moved, const WindowOrigin& o, const PivConfig& cfg) {
  const double lo_x = o.x + (cfg.window_size - cfg.pattern_size) / 2;
  const double lo_y = o.y + (cfg.window_size - cfg.pattern_size) / 2;
  int count = 0;
  for (const auto& p : moved.positions) {
    const double r = moved.radius;
    if (p.x - r >= lo_x && p.x + r <= lo_x + cfg.pattern_size && p.y - r >= lo_y &&
        p.y + r <= lo_y + cfg.pattern_size) {
      ++count;
    }
  }
  return count;
}

TEST(ComputeField, SyntheticGroundTruth) {
  const PivConfig cfg;
  for (int dx : {-8, -3, 0, 4, 8}) {
    for (int dy : {-8, -1, 0, 6, 8}) {
      for (std::uint64_t seed : {1u, 2u}) {
        const synth::FlowSpec flow = synth::FlowSpec::uniform(dx, dy);
        const synth::ParticleField pf = synth::seed_particles(320, 256, 10, seed);
        const auto [f1, f2] = synth::render_pair(pf, flow, synth::RenderConfig{});
        const VectorField field = compute_field(f1, f2, cfg);
        const synth::ParticleField moved = synth::advect(pf, flow);
        int hits = 0;
        for (int i = 0; i < field.grid.count(); ++i) {
          const Displacement& d = field.vectors[static_cast<std::size_t>(i)];
          const bool exact = d.dx == dx && d.dy == dy;
          hits += exact ? 1 : 0;
          if (interior_particles(moved, field.grid.origins[static_cast<std::size_t>(i)], cfg) >= 3) {
            EXPECT_TRUE(exact) << "flow " << dx << "," << dy << " seed " << seed << " window " << i;
          }
        }
        EXPECT_GE(hits, 76) << "flow " << dx << "," << dy << " seed " << seed;
      }
    }
  }
}

}  // namespace
}  // namespace pivring
