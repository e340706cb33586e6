// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

// Exit-gate checks. Prints one PASS/FAIL line per criterion and returns
// non-zero if any fails. Tolerances are pinned here.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pivring/correlation.hpp"
#include "pivring/field.hpp"
#include "pivring/ring/handshake.hpp"
#include "pivring/ring/model.hpp"
#include "pivring/ring/simulator.hpp"
#include "pivring/synth.hpp"
#include "pivring/windows.hpp"

namespace {

namespace fs = std::filesystem;
using namespace pivring;

constexpr double kCellTolerance = 0.05;     // relative, per reference cell
constexpr double kClockRelation = 0.01;     // pixel clock vs images/sec
constexpr double kRecoveryFraction = 0.95;  // windows with exact displacement
constexpr double kSaturationSlack = 0.15;   // |n* - sqrt(a/b)| / sqrt(a/b)

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Reference throughput for 1..6 modules: images/sec, pixel clock MHz, vectors/sec.
struct Row {
  double ips, mhz, vps;
};
const Row kReference[6] = {{204, 16.8, 16393}, {403, 33.0, 32258}, {571, 46.8, 45714},
                           {757, 62.1, 60606}, {925, 75.9, 74074}, {1063, 87.1, 85106}};

fs::path scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "pivring_acceptance";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int cli(const std::string& args, const std::string& tag) {
  const std::string cmd = std::string(PIVRING_CLI) + " " + args + " >" + (scratch() / (tag + ".out")).string() +
                          " 2>" + (scratch() / (tag + ".err")).string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> data_rows(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::vector<std::string> rows;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  }
  return rows;
}

std::vector<std::vector<double>> numeric_rows(const fs::path& p) {
  std::vector<std::vector<double>> out;
  const auto rows = data_rows(p);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::istringstream line(rows[i]);
    std::vector<double> v;
    for (std::string f; std::getline(line, f, ',');) v.push_back(std::stod(f));
    out.push_back(std::move(v));
  }
  return out;
}

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

// Per-bit XNOR sum written from the definition: displacement d puts the
// pattern at (centre - d) in the search window.
std::int64_t naive_xnor(const BinaryImage& s, const BinaryImage& p, int dx, int dy) {
  const int cx = (s.width() - p.width()) / 2;
  const int cy = (s.height() - p.height()) / 2;
  std::int64_t sum = 0;
  for (int v = 0; v < p.height(); ++v) {
    for (int u = 0; u < p.width(); ++u) sum += s.get(cx - dx + u, cy - dy + v) == p.get(u, v) ? 1 : 0;
  }
  return sum;
}

BinaryImage random_bits(int w, int h, std::mt19937_64& rng) {
  std::bernoulli_distribution bit(0.5);
  BinaryImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) img.set(x, y, bit(rng));
  }
  return img;
}

Outcome correlation_oracle() {
  std::mt19937_64 rng(2026);
  long shifts = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const BinaryImage s = random_bits(32, 32, rng);
    const BinaryImage p = random_bits(16, 16, rng);
    const CorrelationPlane plane = xcorr_binary(s, p);
    if (plane.shifts_x != 17 || plane.shifts_y != 17) return {false, "plane is not 17x17"};
    for (int dy = plane.origin_dy; dy < plane.origin_dy + 17; ++dy) {
      for (int dx = plane.origin_dx; dx < plane.origin_dx + 17; ++dx) {
        if (plane.at_displacement(dx, dy) != naive_xnor(s, p, dx, dy)) {
          return {false, fmt("mismatch in pair %.0f at (%.0f,%.0f)", trial, dx, dy)};
        }
        ++shifts;
      }
    }
  }
  return {true, fmt("1000 pairs, %.0f shifts equal", static_cast<double>(shifts))};
}

Outcome ground_truth() {
  const PivConfig cfg;
  const WindowGrid grid = tile_windows(320, 256, 32);
  double worst = 1.0;
  int worst_dx = 0, worst_dy = 0;
  for (int dy = -8; dy <= 8; ++dy) {
    for (int dx = -8; dx <= 8; ++dx) {
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto particles = synth::seed_particles(320, 256, 10.0, seed);
        const auto [f1, f2] = synth::render_pair(particles, synth::FlowSpec::uniform(dx, dy), synth::RenderConfig{});
        const VectorField field = compute_field(f1, f2, cfg);
        int hits = 0;
        for (const auto& v : field.vectors) hits += v.dx == dx && v.dy == dy;
        const double frac = static_cast<double>(hits) / grid.count();
        if (frac < worst) {
          worst = frac;
          worst_dx = dx;
          worst_dy = dy;
        }
      }
    }
  }
  return {worst >= kRecoveryFraction,
          fmt("289 flows x 5 seeds, worst %.4f", worst) + fmt(" at (%.0f,%.0f)", worst_dx, worst_dy)};
}

Outcome table_reproduction() {
  const fs::path cfg = scratch() / "calibrated.cfg";
  if (const int rc = cli("calibrate --out " + cfg.string(), "cal"); rc != 0) return {false, fmt("calibrate exit %.0f", rc)};
  const fs::path out = scratch() / "scale.csv";
  if (const int rc = cli("scale --range 1..6 --config " + cfg.string() + " --out " + out.string(), "scale"); rc != 0) {
    return {false, fmt("scale exit %.0f", rc)};
  }
  const auto rows = numeric_rows(out);
  if (rows.size() != 6) return {false, "expected 6 rows"};
  double worst = 0.0;
  for (std::size_t i = 0; i < 6; ++i) {
    worst = std::max({worst, rel(rows[i][1], kReference[i].ips), rel(rows[i][2], kReference[i].mhz),
                      rel(rows[i][3], kReference[i].vps)});
  }
  return {worst <= kCellTolerance, fmt("18 cells, worst relative error %.4f (limit %.2f)", worst, kCellTolerance)};
}

bool relations_hold(double ips, double mhz, double vps, double vps_rounding) {
  return rel(mhz, ips * 81920.0 / 1e6) <= kClockRelation && std::abs(vps - ips * 80.0) <= vps_rounding;
}

Outcome report_relations() {
  // Reports as emitted by the CLI, from simulation and from the model.
  const fs::path model = scratch() / "model.csv";
  if (cli("scale --model --range 1..32 --out " + model.string(), "model") != 0) return {false, "scale --model failed"};
  std::size_t checked = 0;
  for (const fs::path& p : {scratch() / "scale.csv", model}) {
    const auto rows = numeric_rows(p);
    if (rows.empty()) return {false, "no rows in " + p.filename().string()};
    for (const auto& r : rows) {
      // images/sec is printed to 3 decimals and vectors/sec to 2
      if (!relations_hold(r[1], r[2], r[3], 80 * 5e-4 + 5e-3)) return {false, "relation broken in " + p.string()};
      ++checked;
    }
  }
  // Reports straight from the library.
  ring::SimConfig cfg;
  for (int n = 1; n <= 4; ++n) {
    cfg.n_processing = n;
    const auto r = ring::simulate_throughput(cfg);
    if (!relations_hold(r.images_per_sec, r.pixel_clock_mhz, r.vectors_per_sec, 1e-9 * r.vectors_per_sec)) {
      return {false, fmt("library report n=%.0f", n)};
    }
    ++checked;
  }
  return {true, fmt("%.0f reports consistent", static_cast<double>(checked))};
}

Outcome handshake_safety() {
  using namespace ring;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> mhz(1.0, 200.0);
  std::bernoulli_distribution consume(0.7);
  constexpr int kFrames = 10'000;
  constexpr int kLinks = 20;
  for (int link = 0; link < kLinks; ++link) {
    const double ft = mhz(rng);
    const double fr = mhz(rng);
    const LinkTiming timing{ClockDomain{ft, 0.0}, ClockDomain{fr, 0.0}, 2};
    SendUnit tx;
    ReceiveUnit rx;
    std::vector<std::uint64_t> got;
    std::uint64_t next = 0;
    std::int64_t ks = 0, kr = 0;
    const auto edge = [](double f, std::int64_t k) { return std::llround(static_cast<double>(k) * 1e6 / f); };
    while (got.size() < static_cast<std::size_t>(kFrames) && ks + kr < 100'000'000) {
      const SimTime ts = edge(ft, ks);
      const SimTime tr = edge(fr, kr);
      if (ts <= tr) {
        if (!tx.latch && next < kFrames) tx.latch = RingFrame::empty(next++);
        handshake_step(tx, rx, timing, Side::Sender, ts);
        ++ks;
      } else {
        handshake_step(tx, rx, timing, Side::Receiver, tr);
        if (rx.latch && consume(rng)) {
          got.push_back(rx.latch->id);
          rx.latch.reset();
          handshake_step(tx, rx, timing, Side::Receiver, tr);
        }
        ++kr;
      }
    }
    if (got.size() != static_cast<std::size_t>(kFrames)) return {false, fmt("link %.0f lost frames", link)};
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (got[i] != i) return {false, fmt("link %.0f out of order or duplicated at %.0f", link, static_cast<double>(i))};
    }
  }
  return {true, fmt("%.0f links x %.0f frames, in order, none lost or duplicated", kLinks, kFrames)};
}

Outcome scaling_shape() {
  const auto rows = numeric_rows(scratch() / "scale.csv");
  if (rows.size() != 6) return {false, "criterion 3 output missing"};
  double worst_eff_rise = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][3] <= rows[i - 1][3]) return {false, fmt("vectors/sec not increasing at n=%.0f", i + 1.0)};
    const double eff = rows[i][3] / rows[0][3] / (i + 1.0);
    const double prev = rows[i - 1][3] / rows[0][3] / static_cast<double>(i);
    worst_eff_rise = std::max(worst_eff_rise, eff - prev);
  }
  if (worst_eff_rise > 0.0) return {false, fmt("speedup/n rises by %.2e", worst_eff_rise)};

  ring::SimConfig linear;
  linear.hop_cost = 0;
  linear.n_processing = 1;
  const double v1 = ring::simulate_throughput(linear).vectors_per_sec;
  double worst_linear = 0.0;
  for (int n = 2; n <= 6; ++n) {
    linear.n_processing = n;
    worst_linear = std::max(worst_linear, rel(ring::simulate_throughput(linear).vectors_per_sec / v1, n));
  }
  if (worst_linear > 1e-9) return {false, fmt("hop_cost=0 speedup off linear by %.2e", worst_linear)};

  const ring::SimConfig cfg = ring::load_sim_config(scratch() / "calibrated.cfg");
  const auto sat = ring::find_saturation(cfg, 0.05);
  if (!sat.saturated) return {false, "no saturation found"};
  const double slack = std::abs(sat.n - sat.analytic_optimum) / sat.analytic_optimum;
  return {slack <= kSaturationSlack, fmt("n*=%.0f, sqrt(a/b)=%.2f, offset %.3f", sat.n, sat.analytic_optimum, slack) +
                                         fmt(", hop_cost=0 deviation %.1e", worst_linear)};
}

Outcome determinism() {
  struct Run {
    std::string name;
    std::string args;  // {} is replaced by the output location
    bool dir_output;
  };
  const std::string frames = (scratch() / "det_synth_a" / "frame1.pgm").string() + " " +
                             (scratch() / "det_synth_a" / "frame2.pgm").string();
  const std::vector<Run> runs = {
      {"synth", "synth --flow vortex:160,128,0.05 --seed 11 --noise 20 --out {}", true},
      {"piv", "piv " + frames + " --binarization adaptive --out {}", false},
      {"scale", "scale --range 1..3 --seed 5 --out {}", false},
      {"scale_model", "scale --model --range 1..20 --out {}", false},
      {"calibrate", "calibrate --out {}", false},
  };
  for (const auto& r : runs) {
    fs::path outs[2];
    for (int k = 0; k < 2; ++k) {
      outs[k] = scratch() / ("det_" + r.name + (k ? "_b" : "_a"));
      std::string args = r.args;
      args.replace(args.find("{}"), 2, outs[k].string());
      if (const int rc = cli(args, "det"); rc != 0) return {false, r.name + fmt(" exit %.0f", rc)};
    }
    if (r.dir_output) {
      for (const char* f : {"frame1.pgm", "frame2.pgm"}) {
        if (slurp(outs[0] / f) != slurp(outs[1] / f)) return {false, r.name + " " + f + " differs"};
      }
      if (data_rows(outs[0] / "truth.csv") != data_rows(outs[1] / "truth.csv")) return {false, "synth truth differs"};
    } else {
      const auto a = data_rows(outs[0]);
      if (a.size() < 2 || a != data_rows(outs[1])) return {false, r.name + " rows differ"};
    }
  }
  // trace output as well
  for (int k = 0; k < 2; ++k) {
    const std::string t = (scratch() / (k ? "trace_b.csv" : "trace_a.csv")).string();
    if (cli("scale --range 2 --pairs 3 --verbose --trace " + t, "trace") != 0) return {false, "trace run failed"};
  }
  if (data_rows(scratch() / "trace_a.csv") != data_rows(scratch() / "trace_b.csv")) return {false, "trace differs"};
  return {true, "synth, piv, scale, scale --model, calibrate and trace rows identical"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "correlation oracle equivalence", 10.0, correlation_oracle},
      {2, "ground-truth recovery", 60.0, ground_truth},
      {3, "reference throughput table within 5%", 30.0, table_reproduction},
      {4, "report internal consistency", 30.0, report_relations},
      {5, "handshake safety", 60.0, handshake_safety},
      {6, "scaling shape and saturation", 60.0, scaling_shape},
      {7, "determinism", 60.0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      o.pass = false;
      o.detail += fmt(" [over budget %.0f s]", c.budget_s);
    }
    failed += !o.pass;
    std::printf("[%s] %d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  fs::remove_all(scratch());
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
