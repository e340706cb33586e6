// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#include "pivring/ring/config.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "pivring/errors.hpp"
#include "pivring/ring/frame.hpp"
#include "pivring/synth.hpp"

namespace pivring::ring {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

long long to_integer(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw ConfigError("'" + key + "' expects an integer, got '" + value + "'");
  return v;
}

double to_real(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size() || !std::isfinite(v)) {
    throw ConfigError("'" + key + "' expects a number, got '" + value + "'");
  }
  return v;
}

int to_int(const std::string& key, const std::string& value) {
  const long long v = to_integer(key, value);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ConfigError("'" + key + "' out of range");
  }
  return static_cast<int>(v);
}

}  // namespace

PivConfig SimConfig::piv_config() const {
  PivConfig p;
  p.window_size = window_size;
  p.pattern_size = pattern_size;
  p.binarization = binarization;
  p.threshold = threshold;
  return p;
}

void SimConfig::validate() const {
  if (n_processing < 1) throw ConfigError("n_processing must be at least 1, got " + std::to_string(n_processing));
  piv_config().validate();
  if (width <= 0 || height <= 0 || width % window_size != 0 || height % window_size != 0) {
    throw ConfigError("image " + std::to_string(width) + "x" + std::to_string(height) +
                      " is not tiled by windows of " + std::to_string(window_size));
  }
  if (window_count() > VectorWord::kMaxWindows) throw ConfigError("too many windows for the result word");
  if (piv_config().max_shift() > VectorWord::kMaxShift) throw ConfigError("search range too wide for the result word");
  if (static_cast<long long>(pattern_size) * pattern_size > VectorWord::kMaxPeak) {
    throw ConfigError("pattern too large for the result word");
  }
  if (t_corr <= 0) throw ConfigError("t_corr must be positive");
  if (hop_cost < 0) throw ConfigError("hop_cost must not be negative");
  if (handshake_cost <= 0) throw ConfigError("handshake_cost must be positive");
  if (!(pixel_clock_mhz > 0.0)) throw ConfigError("pixel_clock_mhz must be positive");
  if (storage_latency <= 0) throw ConfigError("storage_latency must be positive");
  if (max_empty_frames <= 0) throw ConfigError("max_empty_frames must be positive");
  for (const ClockDomain* c : {&clocks.control, &clocks.acquisition, &clocks.storage, &clocks.processing}) {
    if (!(c->frequency_mhz > 0.0)) throw ConfigError("clock frequencies must be positive");
    if (c->phase_cycles < 0.0) throw ConfigError("clock phases must not be negative");
  }
  if (!(particle_density > 0.0)) throw ConfigError("particle_density must be positive");
  synth::FlowSpec::parse(flow);
}

void apply_config_value(SimConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "n_processing") {
    cfg.n_processing = to_int(key, value);
  } else if (key == "width") {
    cfg.width = to_int(key, value);
  } else if (key == "height") {
    cfg.height = to_int(key, value);
  } else if (key == "window_size") {
    cfg.window_size = to_int(key, value);
  } else if (key == "pattern_size") {
    cfg.pattern_size = to_int(key, value);
  } else if (key == "t_corr") {
    cfg.t_corr = to_integer(key, value);
  } else if (key == "hop_cost") {
    cfg.hop_cost = to_integer(key, value);
  } else if (key == "handshake_cost") {
    cfg.handshake_cost = to_int(key, value);
  } else if (key == "pixel_clock_mhz") {
    cfg.pixel_clock_mhz = to_real(key, value);
  } else if (key == "storage_latency") {
    cfg.storage_latency = to_int(key, value);
  } else if (key == "max_empty_frames") {
    cfg.max_empty_frames = to_int(key, value);
  } else if (key == "control_mhz") {
    cfg.clocks.control.frequency_mhz = to_real(key, value);
  } else if (key == "acquisition_mhz") {
    cfg.clocks.acquisition.frequency_mhz = to_real(key, value);
  } else if (key == "storage_mhz") {
    cfg.clocks.storage.frequency_mhz = to_real(key, value);
  } else if (key == "processing_mhz") {
    cfg.clocks.processing.frequency_mhz = to_real(key, value);
  } else if (key == "control_phase") {
    cfg.clocks.control.phase_cycles = to_real(key, value);
  } else if (key == "acquisition_phase") {
    cfg.clocks.acquisition.phase_cycles = to_real(key, value);
  } else if (key == "storage_phase") {
    cfg.clocks.storage.phase_cycles = to_real(key, value);
  } else if (key == "processing_phase") {
    cfg.clocks.processing.phase_cycles = to_real(key, value);
  } else if (key == "seed") {
    const long long v = to_integer(key, value);
    if (v < 0) throw ConfigError("seed must not be negative");
    cfg.seed = static_cast<std::uint64_t>(v);
  } else if (key == "particle_density") {
    cfg.particle_density = to_real(key, value);
  } else if (key == "flow") {
    synth::FlowSpec::parse(value);
    cfg.flow = value;
  } else if (key == "binarization") {
    if (value == "global") {
      cfg.binarization = Binarization::Global;
    } else if (value == "adaptive") {
      cfg.binarization = Binarization::Adaptive;
    } else {
      throw ConfigError("binarization must be 'global' or 'adaptive', got '" + value + "'");
    }
  } else if (key == "threshold") {
    const int v = to_int(key, value);
    if (v < 0 || v > kMaxIntensity) throw ConfigError("threshold out of range");
    cfg.threshold = static_cast<Intensity>(v);
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

SimConfig parse_sim_config(std::istream& in, SimConfig base) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      apply_config_value(base, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  base.validate();
  return base;
}

SimConfig load_sim_config(const std::filesystem::path& path, SimConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return parse_sim_config(in, std::move(base));
}

void write_sim_config(std::ostream& out, const SimConfig& cfg) {
  std::ostringstream s;
  s << std::setprecision(10);
  s << "n_processing = " << cfg.n_processing << '\n'
    << "width = " << cfg.width << '\n'
    << "height = " << cfg.height << '\n'
    << "window_size = " << cfg.window_size << '\n'
    << "pattern_size = " << cfg.pattern_size << '\n'
    << "t_corr = " << cfg.t_corr << '\n'
    << "hop_cost = " << cfg.hop_cost << '\n'
    << "handshake_cost = " << cfg.handshake_cost << '\n'
    << "pixel_clock_mhz = " << cfg.pixel_clock_mhz << '\n'
    << "storage_latency = " << cfg.storage_latency << '\n'
    << "max_empty_frames = " << cfg.max_empty_frames << '\n'
    << "control_mhz = " << cfg.clocks.control.frequency_mhz << '\n'
    << "acquisition_mhz = " << cfg.clocks.acquisition.frequency_mhz << '\n'
    << "storage_mhz = " << cfg.clocks.storage.frequency_mhz << '\n'
    << "processing_mhz = " << cfg.clocks.processing.frequency_mhz << '\n'
    << "control_phase = " << cfg.clocks.control.phase_cycles << '\n'
    << "acquisition_phase = " << cfg.clocks.acquisition.phase_cycles << '\n'
    << "storage_phase = " << cfg.clocks.storage.phase_cycles << '\n'
    << "processing_phase = " << cfg.clocks.processing.phase_cycles << '\n'
    << "seed = " << cfg.seed << '\n'
    << "particle_density = " << cfg.particle_density << '\n'
    << "flow = " << cfg.flow << '\n'
    << "binarization = " << (cfg.binarization == Binarization::Adaptive ? "adaptive" : "global") << '\n'
    << "threshold = " << cfg.threshold << '\n';
  out << s.str();
}

}  // namespace pivring::ring
