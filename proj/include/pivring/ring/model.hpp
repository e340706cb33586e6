// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "pivring/ring/config.hpp"
#include "pivring/ring/simulator.hpp"

namespace pivring::ring {

/// Image time t(n) = a / n + b * n, in seconds. `a` is the total correlation
/// work of one image pair, `b` the ring overhead added per processing module.
struct ThroughputModel {
  double a = 0.0;
  double b = 0.0;

  double image_time(double n) const noexcept { return a / n + b * n; }
  double images_per_sec(double n) const noexcept { return 1.0 / image_time(n); }
  /// Throughput-optimal module count sqrt(a / b); infinite when b == 0.
  double optimum() const noexcept;
};

ThroughputModel model_from_config(const SimConfig& cfg);

ThroughputReport predict_throughput(const SimConfig& cfg, int n);

/// Extra throughput from module n + 1, as a fraction of single-module
/// throughput: (V(n+1) - V(n)) / V(1).
double marginal_gain(const ThroughputModel& model, int n);

struct ReferenceRow {
  int n = 0;
  double images_per_sec = 0.0;
  double pixel_clock_mhz = 0.0;
  double vectors_per_sec = 0.0;
};

/// Measured FPGA throughput for 1..6 processing modules (320x256 frames,
/// 80 windows of 32x32).
std::vector<ReferenceRow> reference_table();

/// Reads `n,images_per_sec,pixel_clock_mhz,vectors_per_sec` (or just
/// `n,vectors_per_sec`); '#' lines are comments. Throws InputError.
std::vector<ReferenceRow> read_reference_csv(std::istream& in);

/// Least-squares fit of a/n + b*n to window_count / vectors_per_sec,
/// minimising relative error; b is clamped at zero. Throws InputError when
/// fewer than two distinct module counts are given.
ThroughputModel fit_model(std::span<const ReferenceRow> rows, int window_count);

struct Calibration {
  SimConfig config;                 // base config with t_corr and hop_cost replaced
  ThroughputModel model;            // the fitted model
  std::vector<double> row_errors;   // relative vectors/sec error of the fitted model per row
  double max_error = 0.0;
};

/// Fits the model and converts it to processing-clock cycle counts.
Calibration calibrate(const SimConfig& base, std::span<const ReferenceRow> rows);

struct SaturationResult {
  int n = 0;                     // smallest n whose next module adds less than the threshold
  bool saturated = false;        // false: no saturation below the search cap; n == cap
  double analytic_optimum = 0.0;  // sqrt(a / b)
  int analytic_n = 0;            // the model's answer before simulation
  bool simulated = false;
  double simulated_gain = 0.0;   // measured gain of module n + 1 (when simulated)
};

/// Searches with the analytic model, then confirms with run_simulation at n and
/// n + 1 (and neighbours, if the simulation disagrees).
SaturationResult find_saturation(const SimConfig& cfg, double gain_threshold, int search_cap = 64,
                                 bool confirm_with_simulation = true);

}  // namespace pivring::ring
