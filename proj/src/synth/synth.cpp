// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#include "pivring/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "pivring/errors.hpp"

namespace pivring::synth {

namespace {

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + item + "' in flow spec");
    }
    if (used != item.size() || !std::isfinite(v)) throw ConfigError("bad number '" + item + "' in flow spec");
    out.push_back(v);
  }
  return out;
}

}  // namespace

FlowSpec FlowSpec::uniform(double dx, double dy) {
  FlowSpec f;
  f.kind = FlowKind::Uniform;
  f.dx = dx;
  f.dy = dy;
  return f;
}

FlowSpec FlowSpec::shear(double rate) {
  FlowSpec f;
  f.kind = FlowKind::Shear;
  f.shear_rate = rate;
  return f;
}

FlowSpec FlowSpec::vortex(double cx, double cy, double strength) {
  FlowSpec f;
  f.kind = FlowKind::Vortex;
  f.center_x = cx;
  f.center_y = cy;
  f.strength = strength;
  return f;
}

FlowSpec FlowSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("flow spec '" + text + "' needs KIND:PARAMS");
  const std::string kind = text.substr(0, colon);
  const std::vector<double> p = parse_numbers(text.substr(colon + 1));
  if (kind == "uniform" && p.size() == 2) return uniform(p[0], p[1]);
  if (kind == "shear" && p.size() == 1) return shear(p[0]);
  if (kind == "vortex" && p.size() == 3) return vortex(p[0], p[1], p[2]);
  throw ConfigError("unrecognised flow spec '" + text + "'");
}

std::pair<double, double> FlowSpec::displacement_at(double x, double y) const {
  switch (kind) {
    case FlowKind::Uniform:
      return {dx, dy};
    case FlowKind::Shear:
      return {shear_rate * y, 0.0};
    case FlowKind::Vortex: {
      const double rx = x - center_x;
      const double ry = y - center_y;
      const double c = std::cos(strength);
      const double s = std::sin(strength);
      return {c * rx - s * ry - rx, s * rx + c * ry - ry};
    }
  }
  return {0.0, 0.0};
}

void RenderConfig::validate() const {
  if (width <= 0 || height <= 0) throw ConfigError("render size must be positive");
  if (background > kMaxIntensity || particle > kMaxIntensity) throw ConfigError("intensities exceed 10 bits");
  if (noise_amplitude < 0 || noise_amplitude > kMaxIntensity) throw ConfigError("noise amplitude out of range");
}

ParticleField seed_particles(int width, int height, double density, std::uint64_t seed, int window_size,
                             double radius) {
  if (!(density > 0.0) || !std::isfinite(density)) {
    throw ConfigError("particle density must be positive, got " + std::to_string(density));
  }
  if (!(radius > 0.0)) throw ConfigError("particle radius must be positive");
  const WindowGrid grid = tile_windows(width, height, window_size);

  std::mt19937_64 rng(seed);
  const double whole = std::floor(density);
  const double frac = density - whole;
  ParticleField field;
  field.radius = radius;
  field.seed = seed;
  field.positions.reserve(static_cast<std::size_t>(std::ceil(density)) * static_cast<std::size_t>(grid.count()));
  for (const auto& o : grid.origins) {
    int count = static_cast<int>(whole);
    if (frac > 0.0 && unit_uniform(rng) < frac) ++count;
    for (int k = 0; k < count; ++k) {
      const double x = o.x + unit_uniform(rng) * window_size;
      const double y = o.y + unit_uniform(rng) * window_size;
      field.positions.push_back({x, y});
    }
  }
  return field;
}

ParticleField advect(const ParticleField& field, const FlowSpec& flow) {
  ParticleField out = field;
  for (auto& p : out.positions) {
    const auto [dx, dy] = flow.displacement_at(p.x, p.y);
    p.x += dx;
    p.y += dy;
  }
  return out;
}

GrayImage render(const ParticleField& field, const RenderConfig& cfg, std::uint64_t noise_stream) {
  cfg.validate();
  GrayImage img(cfg.width, cfg.height, cfg.background);
  const double r = field.radius;
  const double r2 = r * r;
  for (const auto& p : field.positions) {
    const int x0 = std::max(0, static_cast<int>(std::floor(p.x - r - 0.5)));
    const int x1 = std::min(cfg.width - 1, static_cast<int>(std::ceil(p.x + r)));
    const int y0 = std::max(0, static_cast<int>(std::floor(p.y - r - 0.5)));
    const int y1 = std::min(cfg.height - 1, static_cast<int>(std::ceil(p.y + r)));
    for (int y = y0; y <= y1; ++y) {
      const double ddy = y + 0.5 - p.y;
      for (int x = x0; x <= x1; ++x) {
        const double ddx = x + 0.5 - p.x;
        if (ddx * ddx + ddy * ddy <= r2) img.set(x, y, cfg.particle);
      }
    }
  }
  if (cfg.noise_amplitude > 0) {
    std::mt19937_64 rng(field.seed ^ (0x9E3779B97F4A7C15ULL * (noise_stream + 1)));
    const auto span = static_cast<std::uint64_t>(2 * cfg.noise_amplitude + 1);
    for (int y = 0; y < cfg.height; ++y) {
      for (int x = 0; x < cfg.width; ++x) {
        const int noise = static_cast<int>(rng() % span) - cfg.noise_amplitude;
        const int v = std::clamp(static_cast<int>(img.at(x, y)) + noise, 0, static_cast<int>(kMaxIntensity));
        img.set(x, y, static_cast<Intensity>(v));
      }
    }
  }
  return img;
}

std::pair<GrayImage, GrayImage> render_pair(const ParticleField& field, const FlowSpec& flow,
                                            const RenderConfig& cfg) {
  return {render(field, cfg, 0), render(advect(field, flow), cfg, 1)};
}

std::vector<std::pair<double, double>> window_truth(const WindowGrid& grid, const FlowSpec& flow) {
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(grid.count()));
  for (int i = 0; i < grid.count(); ++i) out.push_back(flow.displacement_at(grid.center_x(i), grid.center_y(i)));
  return out;
}

}  // namespace pivring::synth
