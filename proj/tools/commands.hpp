// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pivring::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kInput = 3,
  kConfig = 4,
  kCalibrationResidual = 5,
  kDeadlock = 6,
};

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  bool verbose = false;
};

struct SynthArgs {
  Common common;
  std::string flow = "uniform:3,1";
  double density = 10.0;
  int width = 320;
  int height = 256;
  int window = 32;
  double radius = 2.5;
  int noise = 0;
};

struct PivArgs {
  Common common;
  std::string frame1;
  std::string frame2;
  std::optional<int> window;
  std::optional<int> pattern;
  std::optional<std::string> binarization;
  std::optional<int> threshold;
};

struct ScaleArgs {
  Common common;
  std::string range = "1..6";
  std::optional<std::int64_t> hop_cost;
  std::optional<std::int64_t> t_corr;
  int pairs = 0;
  bool model_only = false;
  std::string trace;
  std::optional<double> saturation;
};

struct CalibrateArgs {
  Common common;
  std::string reference;
  double max_residual = 0.10;
};

int cmd_synth(const SynthArgs& args);
int cmd_piv(const PivArgs& args);
int cmd_scale(const ScaleArgs& args);
int cmd_calibrate(const CalibrateArgs& args);

/// Parses "A..B" (or a single "N") into an inclusive module-count range.
std::pair<int, int> parse_range(const std::string& text);

/// "# "-prefixed manifest lines: subcommand, inputs, config, outputs, seed,
/// emitted_at. SOURCE_DATE_EPOCH, when set, fixes the timestamp.
std::vector<std::string> manifest(const std::string& subcommand, const std::vector<std::string>& inputs,
                                  const std::string& config, const std::vector<std::string>& outputs,
                                  std::uint64_t seed);

}  // namespace pivring::cli
