// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "pivring/errors.hpp"
#include "pivring/ring/model.hpp"

namespace pivring::ring {
namespace {

TEST(Reference, ShippedCsvMatchesBuiltinTable) {
  std::ifstream in(std::string(PIVRING_DATA_DIR) + "/table2_reference.csv");
  ASSERT_TRUE(in);
  const auto rows = read_reference_csv(in);
  const auto builtin = reference_table();
  ASSERT_EQ(rows.size(), builtin.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].n, builtin[i].n);
    EXPECT_EQ(rows[i].vectors_per_sec, builtin[i].vectors_per_sec);
    EXPECT_EQ(rows[i].images_per_sec, builtin[i].images_per_sec);
    EXPECT_EQ(rows[i].pixel_clock_mhz, builtin[i].pixel_clock_mhz);
  }
}

TEST(Reference, TableIsInternallyConsistent) {
  for (const auto& r : reference_table()) {
    EXPECT_NEAR(r.vectors_per_sec / 80.0, r.images_per_sec, 0.01 * r.images_per_sec);
    EXPECT_NEAR(r.images_per_sec * 81920 / 1e6, r.pixel_clock_mhz, 0.01 * r.pixel_clock_mhz);
  }
}

TEST(Reference, CsvParsing) {
  std::istringstream minimal("# only two columns\nn,vectors_per_sec\n1,100\n2,190\n");
  const auto rows = read_reference_csv(minimal);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].n, 2);
  EXPECT_EQ(rows[1].vectors_per_sec, 190.0);
  std::istringstream no_header("1,100\n");
  EXPECT_THROW(read_reference_csv(no_header), InputError);
  std::istringstream bad("n,vectors_per_sec\n1,abc\n");
  EXPECT_THROW(read_reference_csv(bad), InputError);
  std::istringstream ragged("n,vectors_per_sec\n1\n");
  EXPECT_THROW(read_reference_csv(ragged), InputError);
}

double objective(const ThroughputModel& m, const std::vector<ReferenceRow>& rows) {
  double s = 0;
  for (const auto& r : rows) {
    const double e = m.image_time(r.n) / (80.0 / r.vectors_per_sec) - 1.0;
    s += e * e;
  }
  return s;
}

TEST(Fit, IsStationaryPointOfRelativeError) {
  const auto rows = reference_table();
  const ThroughputModel m = fit_model(rows, 80);
  // perturbing either parameter can only make the objective worse
  const double base = objective(m, rows);
  for (double f : {0.99, 0.999, 1.001, 1.01}) {
    EXPECT_GT(objective({m.a * f, m.b}, rows), base);
    EXPECT_GT(objective({m.a, m.b * f}, rows), base);
  }
  EXPECT_NEAR(m.a, 4.92e-3, 0.05e-3);
  EXPECT_NEAR(m.b, 2.05e-5, 0.05e-5);
  EXPECT_NEAR(m.optimum(), 15.5, 0.5);
}

TEST(Fit, TwoPointFitPredictsRowFour) {
  // a/n + b n through rows 1 and 6, solved by hand
  const auto rows = reference_table();
  const double t1 = 80.0 / rows[0].vectors_per_sec;
  const double t6 = 80.0 / rows[5].vectors_per_sec;
  const double b = (t6 - t1 / 6.0) / (6.0 - 1.0 / 6.0);
  const double a = t1 - b;
  EXPECT_NEAR(a, 4.86e-3, 0.03e-3);
  EXPECT_NEAR(b, 2.17e-5, 0.05e-5);
  const std::vector<ReferenceRow> two = {rows[0], rows[5]};
  const ThroughputModel m = fit_model(two, 80);
  EXPECT_NEAR(m.a, a, 1e-9);
  EXPECT_NEAR(m.b, b, 1e-11);
  EXPECT_NEAR(m.images_per_sec(4), 757.0, 0.05 * 757.0);
}

TEST(Fit, LinearRowsGiveZeroHopCost) {
  std::vector<ReferenceRow> rows;
  for (int n = 1; n <= 6; ++n) rows.push_back({n, 0, 0, 16000.0 * n});
  const Calibration cal = calibrate(SimConfig{}, rows);
  EXPECT_EQ(cal.config.hop_cost, 0);
  EXPECT_EQ(cal.config.t_corr, 6250);  // 80 windows at 16000 vectors/s on 100 MHz
  EXPECT_LT(cal.max_error, 1e-9);
  // a superlinear table would need b < 0; it is clamped
  std::vector<ReferenceRow> super = {{1, 0, 0, 100}, {2, 0, 0, 250}};
  EXPECT_EQ(fit_model(super, 80).b, 0.0);
}

TEST(Fit, InsufficientData) {
  const std::vector<ReferenceRow> one = {{1, 204, 16.8, 16393}};
  EXPECT_THROW(fit_model(one, 80), InputError);
  const std::vector<ReferenceRow> same = {{2, 0, 0, 100}, {2, 0, 0, 110}};
  EXPECT_THROW(calibrate(SimConfig{}, same), InputError);
}

TEST(Calibrate, ReproducesTableWithinFivePercent) {
  const Calibration cal = calibrate(SimConfig{}, reference_table());
  EXPECT_LT(cal.max_error, 0.05);
  EXPECT_EQ(cal.row_errors.size(), 6u);
  EXPECT_NEAR(static_cast<double>(cal.config.t_corr), 6152, 10);
  EXPECT_NEAR(static_cast<double>(cal.config.hop_cost), 2054, 10);
  // the shipped defaults are this calibration
  EXPECT_EQ(cal.config.t_corr, SimConfig{}.t_corr);
  EXPECT_EQ(cal.config.hop_cost, SimConfig{}.hop_cost);
}

TEST(Predict, Examples) {
  const SimConfig cfg;
  EXPECT_NEAR(predict_throughput(cfg, 1).images_per_sec, 204.0, 0.05 * 204.0);
  EXPECT_NEAR(predict_throughput(cfg, 4).images_per_sec, 757.0, 0.05 * 757.0);
  const ThroughputReport r = predict_throughput(cfg, 3);
  EXPECT_DOUBLE_EQ(r.vectors_per_sec, r.images_per_sec * 80);
  SimConfig free = cfg;
  free.hop_cost = 0;
  const double one = predict_throughput(free, 1).images_per_sec;
  for (int n = 2; n <= 10; ++n) EXPECT_NEAR(predict_throughput(free, n).images_per_sec, n * one, 1e-9 * n * one);
  EXPECT_THROW(predict_throughput(cfg, 0), ConfigError);
}

TEST(Saturation, AnalyticSearch) {
  const SimConfig cfg;
  const ThroughputModel m = model_from_config(cfg);
  const SaturationResult s = find_saturation(cfg, 0.05, 64, false);
  ASSERT_TRUE(s.saturated);
  EXPECT_GE(marginal_gain(m, s.n - 1), 0.05);
  EXPECT_LT(marginal_gain(m, s.n), 0.05);
  EXPECT_NEAR(s.n, s.analytic_optimum, 0.15 * s.analytic_optimum);

  EXPECT_EQ(find_saturation(cfg, 1.0, 64, false).n, 1);

  SimConfig free = cfg;
  free.hop_cost = 0;
  const SaturationResult none = find_saturation(free, 0.05, 40, false);
  EXPECT_FALSE(none.saturated);
  EXPECT_EQ(none.n, 40);
  EXPECT_TRUE(std::isinf(none.analytic_optimum));

  EXPECT_THROW(find_saturation(cfg, 0.0), ConfigError);
  EXPECT_THROW(find_saturation(cfg, 1.5), ConfigError);
}

}  // namespace
}  // namespace pivring::ring
