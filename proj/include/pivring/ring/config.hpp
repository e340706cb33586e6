// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "pivring/field.hpp"
#include "pivring/ring/clock.hpp"

namespace pivring::ring {

/// Per-module-type clocks; defaults are the implementation's clock plan
/// (processing 100 MHz, acquisition 10 MHz, storage 100 MHz, control 150 MHz).
struct ClockPlan {
  ClockDomain control{150.0, 0.0};
  ClockDomain acquisition{10.0, 0.0};
  ClockDomain storage{100.0, 0.0};
  ClockDomain processing{100.0, 0.0};
};

struct SimConfig {
  int n_processing = 1;
  int width = 320;
  int height = 256;
  int window_size = 32;
  int pattern_size = 16;

  // Timing. t_corr and hop_cost default to the fit against the measured
  // reference table (see calibrate()).
  std::int64_t t_corr = 6152;    // processing cycles per window correlation
  std::int64_t hop_cost = 2054;  // processing cycles to decode one command frame
  int handshake_cost = 2;        // synchroniser cycles per handshake phase
  double pixel_clock_mhz = 200.0;
  int storage_latency = 4;       // storage cycles for a window fetch
  int max_empty_frames = 2;      // empty frames Control keeps in circulation
  ClockPlan clocks;

  // Workload.
  std::uint64_t seed = 1;
  double particle_density = 10.0;
  std::string flow = "uniform:3,1";
  Binarization binarization = Binarization::Global;
  Intensity threshold = 512;

  int window_count() const noexcept { return (width / window_size) * (height / window_size); }
  int pixels_per_frame() const noexcept { return width * height; }
  PivConfig piv_config() const;

  /// Throws ConfigError.
  void validate() const;
};

/// Plain-text "key = value" file; '#' starts a comment. Unknown keys and
/// malformed values raise ConfigError.
SimConfig parse_sim_config(std::istream& in, SimConfig base = {});
SimConfig load_sim_config(const std::filesystem::path& path, SimConfig base = {});

/// Applies a single key/value pair.
void apply_config_value(SimConfig& cfg, const std::string& key, const std::string& value);

void write_sim_config(std::ostream& out, const SimConfig& cfg);

}  // namespace pivring::ring
