// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"

namespace {

void add_common(CLI::App* sub, pivring::cli::Common& c) {
  sub->add_option("--config", c.config, "key = value configuration file");
  sub->add_option("--out", c.out, "output path");
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_flag("--verbose,-v", c.verbose, "log progress to stderr");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace pivring::cli;
  CLI::App app{"Binary-correlation PIV and ring-architecture throughput simulator", "pivring"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "generate a synthetic particle image pair with ground truth");
  add_common(s, synth.common);
  s->add_option("--flow", synth.flow, "uniform:DX,DY | shear:RATE | vortex:CX,CY,RADIANS");
  s->add_option("--density", synth.density, "mean particles per interrogation window");
  s->add_option("--width", synth.width);
  s->add_option("--height", synth.height);
  s->add_option("--window", synth.window, "window size used for seeding and ground truth");
  s->add_option("--radius", synth.radius, "particle radius in pixels");
  s->add_option("--noise", synth.noise, "uniform noise amplitude");

  PivArgs piv;
  auto* p = app.add_subcommand("piv", "compute a vector field from two PGM frames");
  add_common(p, piv.common);
  p->add_option("frame1", piv.frame1, "first exposure (PGM)")->required();
  p->add_option("frame2", piv.frame2, "second exposure (PGM)")->required();
  p->add_option("--window", piv.window);
  p->add_option("--pattern", piv.pattern);
  p->add_option("--binarization", piv.binarization, "global | adaptive");
  p->add_option("--threshold", piv.threshold, "global threshold (0..1023)");

  ScaleArgs scale;
  auto* sc = app.add_subcommand("scale", "throughput sweep over processing-module counts");
  add_common(sc, scale.common);
  sc->add_option("--range", scale.range, "module counts, e.g. 1..6");
  sc->add_option("--hop-cost", scale.hop_cost, "processing cycles to decode a passing command");
  sc->add_option("--t-corr", scale.t_corr, "processing cycles per window correlation");
  sc->add_option("--pairs", scale.pairs, "image pairs per simulation (0: automatic)");
  sc->add_flag("--model", scale.model_only, "analytic model only, no simulation");
  sc->add_option("--trace", scale.trace, "write the event trace (needs --verbose)");
  sc->add_option("--saturation", scale.saturation, "also report the saturation point for this gain threshold");

  CalibrateArgs cal;
  auto* c = app.add_subcommand("calibrate", "fit t_corr and hop_cost to measured throughput");
  add_common(c, cal.common);
  c->add_option("--reference", cal.reference, "CSV with n and vectors_per_sec columns (default: built-in table)");
  c->add_option("--max-residual", cal.max_residual, "fail when a row error exceeds this fraction");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (s->parsed()) return cmd_synth(synth);
  if (p->parsed()) return cmd_piv(piv);
  if (sc->parsed()) return cmd_scale(scale);
  return cmd_calibrate(cal);
}
