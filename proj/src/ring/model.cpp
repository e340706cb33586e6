// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#include "pivring/ring/model.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <set>
#include <sstream>
#include <string>

#include "pivring/errors.hpp"
#include "pivring/io.hpp"

namespace pivring::ring {

double ThroughputModel::optimum() const noexcept {
  if (b <= 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(a / b);
}

ThroughputModel model_from_config(const SimConfig& cfg) {
  const double hz = cfg.clocks.processing.frequency_mhz * 1e6;
  return {static_cast<double>(cfg.window_count()) * static_cast<double>(cfg.t_corr) / hz,
          static_cast<double>(cfg.hop_cost) / hz};
}

ThroughputReport predict_throughput(const SimConfig& cfg, int n) {
  if (n < 1) throw ConfigError("module count must be at least 1");
  const ThroughputModel m = model_from_config(cfg);
  ThroughputReport rep = make_report(n, m.images_per_sec(n), cfg.window_count(), cfg.pixels_per_frame());
  const double busy = m.a / n / m.image_time(n);
  rep.utilization.assign(static_cast<std::size_t>(n), busy);
  return rep;
}

double marginal_gain(const ThroughputModel& model, int n) {
  return (model.images_per_sec(n + 1) - model.images_per_sec(n)) / model.images_per_sec(1);
}

std::vector<ReferenceRow> reference_table() {
  return {
      {1, 204.0, 16.8, 16393.0}, {2, 403.0, 33.0, 32258.0}, {3, 571.0, 46.8, 45714.0},
      {4, 757.0, 62.1, 60606.0}, {5, 925.0, 75.9, 74074.0}, {6, 1063.0, 87.1, 85106.0},
  };
}

namespace {

double parse_number(const std::string& field, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != field.size() || !std::isfinite(v)) {
    throw InputError("reference line " + std::to_string(line) + ": bad number '" + field + "'");
  }
  return v;
}

std::string trim(std::string s) {
  const auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

}  // namespace

std::vector<ReferenceRow> read_reference_csv(std::istream& in) {
  std::vector<ReferenceRow> rows;
  std::vector<std::string> columns;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields = split_csv_line(line);
    for (auto& f : fields) f = trim(f);
    if (columns.empty()) {
      columns = fields;
      if (std::find(columns.begin(), columns.end(), "n") == columns.end() ||
          std::find(columns.begin(), columns.end(), "vectors_per_sec") == columns.end()) {
        throw InputError("reference header must name columns 'n' and 'vectors_per_sec'");
      }
      continue;
    }
    if (fields.size() != columns.size()) {
      throw InputError("reference line " + std::to_string(lineno) + ": expected " + std::to_string(columns.size()) +
                       " fields");
    }
    ReferenceRow row;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const double v = parse_number(fields[i], lineno);
      if (columns[i] == "n") {
        if (v < 1 || v != std::floor(v)) throw InputError("reference line " + std::to_string(lineno) + ": bad n");
        row.n = static_cast<int>(v);
      } else if (columns[i] == "images_per_sec") {
        row.images_per_sec = v;
      } else if (columns[i] == "pixel_clock_mhz") {
        row.pixel_clock_mhz = v;
      } else if (columns[i] == "vectors_per_sec") {
        row.vectors_per_sec = v;
      }
    }
    if (row.vectors_per_sec <= 0.0) {
      throw InputError("reference line " + std::to_string(lineno) + ": vectors_per_sec must be positive");
    }
    rows.push_back(row);
  }
  return rows;
}

ThroughputModel fit_model(std::span<const ReferenceRow> rows, int window_count) {
  std::set<int> distinct;
  for (const auto& r : rows) distinct.insert(r.n);
  if (distinct.size() < 2) {
    throw InputError("insufficient data: calibration needs at least two distinct module counts, got " +
                     std::to_string(distinct.size()));
  }
  // residual (a/n + b*n) / T - 1 is linear in (a, b)
  double s11 = 0, s12 = 0, s22 = 0, r1 = 0, r2 = 0;
  for (const auto& r : rows) {
    const double t = window_count / r.vectors_per_sec;
    const double x1 = 1.0 / (r.n * t);
    const double x2 = r.n / t;
    s11 += x1 * x1;
    s12 += x1 * x2;
    s22 += x2 * x2;
    r1 += x1;
    r2 += x2;
  }
  const double det = s11 * s22 - s12 * s12;
  ThroughputModel m{(r1 * s22 - r2 * s12) / det, (s11 * r2 - s12 * r1) / det};
  if (m.b < 0.0) m = {r1 / s11, 0.0};
  return m;
}

Calibration calibrate(const SimConfig& base, std::span<const ReferenceRow> rows) {
  const int windows = base.window_count();
  Calibration cal;
  cal.model = fit_model(rows, windows);
  cal.config = base;
  const double hz = base.clocks.processing.frequency_mhz * 1e6;
  cal.config.t_corr = std::max<std::int64_t>(1, std::llround(cal.model.a * hz / windows));
  cal.config.hop_cost = std::llround(cal.model.b * hz);
  const ThroughputModel rounded = model_from_config(cal.config);
  for (const auto& r : rows) {
    const double predicted = windows * rounded.images_per_sec(r.n);
    const double err = std::abs(predicted - r.vectors_per_sec) / r.vectors_per_sec;
    cal.row_errors.push_back(err);
    cal.max_error = std::max(cal.max_error, err);
  }
  return cal;
}

namespace {

double simulated_gain(const SimConfig& cfg, int n, double base_ips) {
  SimConfig at = cfg;
  at.n_processing = n;
  const double v0 = simulate_throughput(at).images_per_sec;
  at.n_processing = n + 1;
  const double v1 = simulate_throughput(at).images_per_sec;
  return (v1 - v0) / base_ips;
}

}  // namespace

SaturationResult find_saturation(const SimConfig& cfg, double gain_threshold, int search_cap,
                                 bool confirm_with_simulation) {
  if (!(gain_threshold > 0.0 && gain_threshold <= 1.0)) {
    throw ConfigError("gain threshold must be in (0, 1]");
  }
  if (search_cap < 1) throw ConfigError("search cap must be at least 1");
  const ThroughputModel model = model_from_config(cfg);
  SaturationResult res;
  res.analytic_optimum = model.optimum();
  res.n = search_cap;
  for (int n = 1; n <= search_cap; ++n) {
    if (marginal_gain(model, n) < gain_threshold) {
      res.n = n;
      res.saturated = true;
      break;
    }
  }
  res.analytic_n = res.n;
  if (!res.saturated || !confirm_with_simulation) return res;

  SimConfig one = cfg;
  one.n_processing = 1;
  const double base_ips = simulate_throughput(one).images_per_sec;
  res.simulated = true;
  int n = res.n;
  double gain = simulated_gain(cfg, n, base_ips);
  // walk to the first n whose measured successor gain falls below the threshold
  while (gain >= gain_threshold && n < search_cap) {
    ++n;
    gain = simulated_gain(cfg, n, base_ips);
  }
  while (n > 1) {
    const double below = simulated_gain(cfg, n - 1, base_ips);
    if (below >= gain_threshold) break;
    --n;
    gain = below;
  }
  res.n = n;
  res.simulated_gain = gain;
  res.saturated = gain < gain_threshold;
  return res;
}

}  // namespace pivring::ring
