// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "pivring/errors.hpp"
#include "pivring/field.hpp"
#include "pivring/io.hpp"
#include "pivring/ring/config.hpp"
#include "pivring/ring/model.hpp"
#include "pivring/ring/simulator.hpp"
#include "pivring/synth.hpp"

namespace pivring::cli {

namespace fs = std::filesystem;

namespace {

// Bad --out and similar argument problems.
struct UsageError : Error {
  using Error::Error;
};

std::string timestamp() {
  std::time_t now = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) now = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string join(const std::vector<std::string>& items) {
  if (items.empty()) return "-";
  std::string s;
  for (const auto& i : items) s += (s.empty() ? "" : " ") + i;
  return s;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  return out;
}

// Writes to --out, or stdout when it is empty.
template <typename Fn>
void emit(const std::string& path, Fn&& write) {
  if (path.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out = open_output(path);
  write(out);
  if (!out) throw UsageError("failed writing " + path);
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v == 0.0 ? 0.0 : v);
  return buf;
}

ring::SimConfig base_config(const Common& c) {
  ring::SimConfig cfg;
  if (!c.config.empty()) cfg = ring::load_sim_config(c.config);
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

// Maps library exceptions to exit codes. `config_is_usage` covers commands
// whose only configuration comes from flags.
template <typename Fn>
int guarded(const char* name, bool config_is_usage, Fn&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    std::cerr << name << ": " << e.what() << '\n';
    return kUsage;
  } catch (const SimulationDeadlock& e) {
    std::cerr << name << ": " << e.what() << '\n';
    return kDeadlock;
  } catch (const ConfigError& e) {
    std::cerr << name << ": " << e.what() << '\n';
    return config_is_usage ? kUsage : kConfig;
  } catch (const InputError& e) {
    std::cerr << name << ": " << e.what() << '\n';
    return kInput;
  } catch (const DimensionError& e) {
    std::cerr << name << ": " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << name << ": " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace

std::vector<std::string> manifest(const std::string& subcommand, const std::vector<std::string>& inputs,
                                  const std::string& config, const std::vector<std::string>& outputs,
                                  std::uint64_t seed) {
  return {
      "subcommand: " + subcommand,
      "inputs: " + join(inputs),
      "config: " + (config.empty() ? std::string("-") : config),
      "outputs: " + join(outputs),
      "seed: " + std::to_string(seed),
      "emitted_at: " + timestamp(),
  };
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  int lo = 0;
  int hi = 0;
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      lo = hi = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      const std::string a = text.substr(0, dots);
      const std::string b = text.substr(dots + 2);
      lo = std::stoi(a, &used);
      if (used != a.size()) throw std::invalid_argument(text);
      hi = std::stoi(b, &used);
      if (used != b.size()) throw std::invalid_argument(text);
    }
  } catch (const std::logic_error&) {
    throw UsageError("bad range '" + text + "', expected A..B");
  }
  if (lo < 1 || hi < lo) throw UsageError("bad range '" + text + "', need 1 <= A <= B");
  return {lo, hi};
}

int cmd_synth(const SynthArgs& args) {
  return guarded("synth", true, [&] {
    if (!(args.density > 0.0)) throw UsageError("--density must be positive");
    ring::SimConfig base = base_config(args.common);
    const std::uint64_t seed = args.common.seed.value_or(base.seed);
    const synth::FlowSpec flow = synth::FlowSpec::parse(args.flow);
    synth::RenderConfig rc;
    rc.width = args.width;
    rc.height = args.height;
    rc.noise_amplitude = args.noise;
    rc.validate();
    const WindowGrid grid = tile_windows(args.width, args.height, args.window);
    const synth::ParticleField field =
        synth::seed_particles(args.width, args.height, args.density, seed, args.window, args.radius);
    const auto [f1, f2] = synth::render_pair(field, flow, rc);

    const fs::path dir = args.common.out.empty() ? fs::path(".") : fs::path(args.common.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path p1 = dir / "frame1.pgm";
    const fs::path p2 = dir / "frame2.pgm";
    const fs::path pt = dir / "truth.csv";
    {
      std::ofstream out = open_output(p1);
      write_pgm(out, f1);
    }
    {
      std::ofstream out = open_output(p2);
      write_pgm(out, f2);
    }
    std::ofstream truth = open_output(pt);
    for (const auto& line : manifest("synth", {}, args.common.config, {p1.string(), p2.string(), pt.string()}, seed)) {
      truth << "# " << line << '\n';
    }
    truth << "# flow: " << args.flow << ", density: " << number(args.density) << '\n';
    truth << "window,dx,dy\n";
    const auto t = synth::window_truth(grid, flow);
    for (std::size_t i = 0; i < t.size(); ++i) truth << i << ',' << number(t[i].first) << ',' << number(t[i].second) << '\n';
    if (!truth) throw UsageError("failed writing " + pt.string());
    if (args.common.verbose) {
      std::cerr << "synth: " << field.positions.size() << " particles, " << grid.count() << " windows -> " << dir.string()
                << '\n';
    }
    return static_cast<int>(kOk);
  });
}

int cmd_piv(const PivArgs& args) {
  return guarded("piv", false, [&] {
    ring::SimConfig base = base_config(args.common);
    PivConfig cfg = base.piv_config();
    if (args.window) cfg.window_size = *args.window;
    if (args.pattern) cfg.pattern_size = *args.pattern;
    if (args.threshold) {
      if (*args.threshold < 0 || *args.threshold > kMaxIntensity) throw UsageError("--threshold must be in 0..1023");
      cfg.threshold = static_cast<Intensity>(*args.threshold);
    }
    if (args.binarization) {
      if (*args.binarization == "global") {
        cfg.binarization = Binarization::Global;
      } else if (*args.binarization == "adaptive") {
        cfg.binarization = Binarization::Adaptive;
      } else {
        throw UsageError("--binarization must be global or adaptive");
      }
    }
    cfg.validate();
    const GrayImage f1 = read_pgm(args.frame1);
    const GrayImage f2 = read_pgm(args.frame2);
    if (f1.width() != f2.width() || f1.height() != f2.height()) {
      throw InputError("frame sizes differ: " + std::to_string(f1.width()) + "x" + std::to_string(f1.height()) +
                       " vs " + std::to_string(f2.width()) + "x" + std::to_string(f2.height()));
    }
    const auto start = std::chrono::steady_clock::now();
    const VectorField field = compute_field(f1, f2, cfg);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const auto header = manifest("piv", {args.frame1, args.frame2}, args.common.config,
                                 {args.common.out.empty() ? "-" : args.common.out}, base.seed);
    emit(args.common.out, [&](std::ostream& out) { write_vector_csv(out, field, header); });
    char buf[96];
    std::snprintf(buf, sizeof buf, "piv: %d windows in %.2f ms\n", field.grid.count(), ms);
    std::cerr << buf;
    return static_cast<int>(kOk);
  });
}

int cmd_scale(const ScaleArgs& args) {
  return guarded("scale", false, [&] {
    const auto [lo, hi] = parse_range(args.range);
    if (args.pairs < 0) throw UsageError("--pairs must be non-negative");
    if (!args.trace.empty() && !args.common.verbose) throw UsageError("--trace needs --verbose");
    if (args.saturation && !(*args.saturation > 0.0 && *args.saturation <= 1.0)) {
      throw UsageError("--saturation must be in (0, 1]");
    }
    ring::SimConfig cfg = base_config(args.common);
    if (args.hop_cost) cfg.hop_cost = *args.hop_cost;
    if (args.t_corr) cfg.t_corr = *args.t_corr;
    cfg.validate();

    std::vector<std::future<ring::ThroughputReport>> jobs;
    for (int n = lo; n <= hi; ++n) {
      ring::SimConfig at = cfg;
      at.n_processing = n;
      if (args.model_only) {
        jobs.push_back(std::async(std::launch::deferred, [at, n] { return ring::predict_throughput(at, n); }));
        continue;
      }
      const int pairs = args.pairs > 0 ? args.pairs : ring::default_pair_count(n);
      std::string trace_path;
      if (!args.trace.empty()) {
        const fs::path t(args.trace);
        trace_path = lo == hi ? t.string()
                              : (t.parent_path() / (t.stem().string() + "_n" + std::to_string(n) + t.extension().string()))
                                    .string();
      }
      jobs.push_back(std::async(std::launch::async, [at, pairs, trace_path, n, &args] {
        ring::SimOptions opt;
        opt.record_trace = !trace_path.empty();
        ring::SimResult r = ring::run_simulation(at, pairs, opt);
        if (opt.record_trace) {
          std::ofstream out = open_output(trace_path);
          ring::write_trace_csv(out, r.trace,
                                manifest("scale", {}, args.common.config, {trace_path}, at.seed));
        }
        if (args.common.verbose) {
          std::cerr << "scale: n=" << n << " pairs=" << pairs << " flag_violations=" << r.flag_violations << '\n';
        }
        return r.report;
      }));
    }
    std::vector<ring::ThroughputReport> rows;
    for (auto& j : jobs) rows.push_back(j.get());

    const auto header = manifest("scale", {}, args.common.config, {args.common.out.empty() ? "-" : args.common.out}, cfg.seed);
    emit(args.common.out, [&](std::ostream& out) { ring::write_report_csv(out, rows, header); });

    if (args.saturation) {
      const ring::SaturationResult s = ring::find_saturation(cfg, *args.saturation, 64, !args.model_only);
      char buf[200];
      if (s.saturated) {
        std::snprintf(buf, sizeof buf, "saturation: n*=%d (gain threshold %.3g, analytic n=%d, sqrt(a/b)=%.2f%s)\n", s.n,
                      *args.saturation, s.analytic_n, s.analytic_optimum,
                      s.simulated ? (", simulated gain " + number(s.simulated_gain)).c_str() : "");
      } else {
        std::snprintf(buf, sizeof buf, "saturation: none below n=%d (gain threshold %.3g)\n", s.n, *args.saturation);
      }
      std::cerr << buf;
    }
    return static_cast<int>(kOk);
  });
}

int cmd_calibrate(const CalibrateArgs& args) {
  return guarded("calibrate", false, [&] {
    if (!(args.max_residual > 0.0)) throw UsageError("--max-residual must be positive");
    ring::SimConfig base = base_config(args.common);
    std::vector<ring::ReferenceRow> rows;
    if (args.reference.empty()) {
      rows = ring::reference_table();
    } else {
      std::ifstream in(args.reference);
      if (!in) throw InputError("cannot read " + args.reference);
      rows = ring::read_reference_csv(in);
    }
    const ring::Calibration cal = ring::calibrate(base, rows);
    char buf[160];
    std::snprintf(buf, sizeof buf, "calibrate: t_corr=%lld cycles, hop_cost=%lld cycles (a=%.6g s, b=%.6g s)\n",
                  static_cast<long long>(cal.config.t_corr), static_cast<long long>(cal.config.hop_cost), cal.model.a,
                  cal.model.b);
    std::cerr << buf;
    const ring::ThroughputModel fitted = ring::model_from_config(cal.config);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::snprintf(buf, sizeof buf, "  n=%d measured=%.1f fitted=%.1f error=%.2f%%\n", rows[i].n, rows[i].vectors_per_sec,
                    fitted.images_per_sec(rows[i].n) * base.window_count(), 100.0 * cal.row_errors[i]);
      std::cerr << buf;
    }
    if (cal.max_error > args.max_residual) {
      std::snprintf(buf, sizeof buf, "calibrate: max residual %.2f%% exceeds %.2f%%\n", 100.0 * cal.max_error,
                    100.0 * args.max_residual);
      std::cerr << buf;
      return static_cast<int>(kCalibrationResidual);
    }
    const auto header = manifest("calibrate", {args.reference.empty() ? "builtin" : args.reference},
                                 args.common.config, {args.common.out.empty() ? "-" : args.common.out}, base.seed);
    emit(args.common.out, [&](std::ostream& out) {
      for (const auto& line : header) out << "# " << line << '\n';
      ring::write_sim_config(out, cal.config);
    });
    return static_cast<int>(kOk);
  });
}

}  // namespace pivring::cli
