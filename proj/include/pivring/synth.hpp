// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pivring/image.hpp"
#include "pivring/windows.hpp"

namespace pivring::synth {

struct Particle {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Particle&) const = default;
};

enum class FlowKind { Uniform, Shear, Vortex };

/// Known displacement field between the two exposures.
struct FlowSpec {
  FlowKind kind = FlowKind::Uniform;
  double dx = 0.0;          // Uniform
  double dy = 0.0;          // Uniform
  double shear_rate = 0.0;  // Shear: dx = rate * y
  double center_x = 0.0;    // Vortex
  double center_y = 0.0;    // Vortex
  double strength = 0.0;    // Vortex: rotation angle (radians) per interval
  double delta_t = 1e-3;    // seconds between exposures; metadata only

  static FlowSpec uniform(double dx, double dy);
  static FlowSpec shear(double rate);
  static FlowSpec vortex(double cx, double cy, double strength);

  /// Parses "uniform:DX,DY", "shear:RATE" or "vortex:CX,CY,STRENGTH".
  /// Throws ConfigError.
  static FlowSpec parse(const std::string& text);

  std::pair<double, double> displacement_at(double x, double y) const;
};

inline constexpr double kDefaultParticleRadius = 2.5;

struct ParticleField {
  std::vector<Particle> positions;
  double radius = kDefaultParticleRadius;
  std::uint64_t seed = 0;

  bool operator==(const ParticleField&) const = default;
};

struct RenderConfig {
  int width = 320;
  int height = 256;
  Intensity background = 100;
  Intensity particle = 800;
  int noise_amplitude = 0;  // additive uniform noise in [-A, A]

  void validate() const;
};

/// Seeds `density` particles per window on average. Placement is stratified
/// per window: each window receives floor(density) particles plus one more
/// with probability frac(density), uniformly placed inside it. Uses
/// std::mt19937_64 so vectors are stable across platforms.
ParticleField seed_particles(int width, int height, double density, std::uint64_t seed, int window_size = 32,
                             double radius = kDefaultParticleRadius);

/// Moves every particle by the flow displacement at its position. Particles
/// leaving the frame are kept.
ParticleField advect(const ParticleField& field, const FlowSpec& flow);

/// Hard-edged discs: a pixel is lit when its centre lies within `radius` of a
/// particle. `noise_stream` selects an independent noise sequence.
GrayImage render(const ParticleField& field, const RenderConfig& cfg, std::uint64_t noise_stream = 0);

/// Frame 1 renders `field`, frame 2 renders advect(field, flow).
std::pair<GrayImage, GrayImage> render_pair(const ParticleField& field, const FlowSpec& flow, const RenderConfig& cfg);

/// Flow displacement evaluated at each window centre.
std::vector<std::pair<double, double>> window_truth(const WindowGrid& grid, const FlowSpec& flow);

}  // namespace pivring::synth
