// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <optional>
#include <string>

#include "pivring/correlation.hpp"
#include "pivring/errors.hpp"
#include "pivring/field.hpp"
#include "pivring/ring/model.hpp"
#include "pivring/ring/simulator.hpp"
#include "pivring/synth.hpp"

namespace py = pybind11;
using namespace pivring;

namespace {

using GrayArray = py::array_t<std::uint16_t, py::array::c_style | py::array::forcecast>;
using BoolArray = py::array_t<bool, py::array::c_style | py::array::forcecast>;

GrayImage to_gray(const GrayArray& a) {
  if (a.ndim() != 2) throw DimensionError("expected a 2-D array");
  const auto h = static_cast<int>(a.shape(0));
  const auto w = static_cast<int>(a.shape(1));
  return GrayImage(w, h, std::vector<Intensity>(a.data(), a.data() + a.size()));
}

GrayArray from_gray(const GrayImage& img) {
  GrayArray a({img.height(), img.width()});
  std::memcpy(a.mutable_data(), img.data().data(), img.size() * sizeof(Intensity));
  return a;
}

BinaryImage to_binary(const BoolArray& a) {
  if (a.ndim() != 2) throw DimensionError("expected a 2-D array");
  const auto h = static_cast<int>(a.shape(0));
  const auto w = static_cast<int>(a.shape(1));
  BinaryImage img(w, h);
  const auto r = a.unchecked<2>();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) img.set(x, y, r(y, x));
  }
  return img;
}

py::dict report_dict(const ring::ThroughputReport& r) {
  py::dict d;
  d["n"] = r.n_processing;
  d["images_per_sec"] = r.images_per_sec;
  d["pixel_clock_mhz"] = r.pixel_clock_mhz;
  d["vectors_per_sec"] = r.vectors_per_sec;
  d["utilization"] = r.utilization;
  d["ring_occupancy"] = r.ring_occupancy;
  return d;
}

ring::SimConfig sim_config(int n, std::optional<std::int64_t> t_corr, std::optional<std::int64_t> hop_cost) {
  ring::SimConfig cfg;
  cfg.n_processing = n;
  if (t_corr) cfg.t_corr = *t_corr;
  if (hop_cost) cfg.hop_cost = *hop_cost;
  cfg.validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_pivring, m) {
  m.doc() = "Binary-correlation PIV and ring throughput simulation";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<SimulationDeadlock>(m, "SimulationDeadlock", PyExc_RuntimeError);

  m.def(
      "xcorr_binary",
      [](const BoolArray& search, const BoolArray& pattern) {
        const CorrelationPlane p = xcorr_binary(to_binary(search), to_binary(pattern));
        py::array_t<std::int64_t> values({p.shifts_y, p.shifts_x});
        std::memcpy(values.mutable_data(), p.values.data(), p.values.size() * sizeof(std::int64_t));
        return py::make_tuple(values, p.origin_dx, p.origin_dy);
      },
      py::arg("search"), py::arg("pattern"),
      "Correlation plane indexed [dy - origin_dy, dx - origin_dx]; returns (plane, origin_dx, origin_dy).");

  m.def(
      "compute_field",
      [](const GrayArray& f1, const GrayArray& f2, int window_size, int pattern_size, const std::string& binarization,
         int threshold) {
        PivConfig cfg;
        cfg.window_size = window_size;
        cfg.pattern_size = pattern_size;
        if (binarization == "adaptive") {
          cfg.binarization = Binarization::Adaptive;
        } else if (binarization != "global") {
          throw ConfigError("binarization must be global or adaptive");
        }
        if (threshold < 0 || threshold > kMaxIntensity) throw ConfigError("threshold out of range");
        cfg.threshold = static_cast<Intensity>(threshold);
        const VectorField field = compute_field(to_gray(f1), to_gray(f2), cfg);
        py::array_t<std::int64_t> out({static_cast<py::ssize_t>(field.vectors.size()), py::ssize_t{4}});
        auto w = out.mutable_unchecked<2>();
        for (std::size_t i = 0; i < field.vectors.size(); ++i) {
          const auto& v = field.vectors[i];
          const auto k = static_cast<py::ssize_t>(i);
          w(k, 0) = v.window_index;
          w(k, 1) = v.dx;
          w(k, 2) = v.dy;
          w(k, 3) = v.peak_value;
        }
        return out;
      },
      py::arg("frame1"), py::arg("frame2"), py::arg("window_size") = 32, py::arg("pattern_size") = 16,
      py::arg("binarization") = "global", py::arg("threshold") = 512,
      "Rows of (window, dx, dy, peak), one per interrogation window.");

  m.def(
      "synth_pair",
      [](const std::string& flow, double density, std::uint64_t seed, int width, int height, int noise) {
        synth::RenderConfig rc;
        rc.width = width;
        rc.height = height;
        rc.noise_amplitude = noise;
        rc.validate();
        const auto particles = synth::seed_particles(width, height, density, seed);
        const auto [a, b] = synth::render_pair(particles, synth::FlowSpec::parse(flow), rc);
        return py::make_tuple(from_gray(a), from_gray(b));
      },
      py::arg("flow") = "uniform:3,1", py::arg("density") = 10.0, py::arg("seed") = 1, py::arg("width") = 320,
      py::arg("height") = 256, py::arg("noise") = 0);

  m.def(
      "simulate_throughput",
      [](int n, std::optional<std::int64_t> t_corr, std::optional<std::int64_t> hop_cost) {
        const ring::SimConfig cfg = sim_config(n, t_corr, hop_cost);
        ring::ThroughputReport r;
        {
          py::gil_scoped_release release;
          r = ring::simulate_throughput(cfg);
        }
        return report_dict(r);
      },
      py::arg("n"), py::arg("t_corr") = py::none(), py::arg("hop_cost") = py::none());

  m.def(
      "predict_throughput",
      [](int n, std::optional<std::int64_t> t_corr, std::optional<std::int64_t> hop_cost) {
        return report_dict(ring::predict_throughput(sim_config(n, t_corr, hop_cost), n));
      },
      py::arg("n"), py::arg("t_corr") = py::none(), py::arg("hop_cost") = py::none());

  m.def("calibrate", [] {
    const auto rows = ring::reference_table();
    const ring::Calibration c = ring::calibrate(ring::SimConfig{}, rows);
    py::dict d;
    d["t_corr"] = c.config.t_corr;
    d["hop_cost"] = c.config.hop_cost;
    d["a"] = c.model.a;
    d["b"] = c.model.b;
    d["row_errors"] = c.row_errors;
    d["max_error"] = c.max_error;
    return d;
  });

  m.def(
      "find_saturation",
      [](double threshold, bool simulate) {
        const auto s = ring::find_saturation(ring::SimConfig{}, threshold, 64, simulate);
        py::dict d;
        d["n"] = s.n;
        d["saturated"] = s.saturated;
        d["analytic_optimum"] = s.analytic_optimum;
        d["analytic_n"] = s.analytic_n;
        return d;
      },
      py::arg("threshold") = 0.05, py::arg("simulate") = false);
}
