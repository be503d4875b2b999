#include <gtest/gtest.h>

#include <cmath>

#include "poissonlab/densities.hpp"
#include "poissonlab/errors.hpp"
#include "poissonlab/estimators.hpp"
#include "poissonlab/experiments.hpp"
#include "poissonlab/mc.hpp"

using namespace poissonlab;

TEST(BinResolution, Examples) {
  EXPECT_EQ(bin_resolution(1000000), 28u);
  EXPECT_EQ(bin_resolution(65536), 5u);
  std::size_t prev = 0;
  for (std::int64_t n = 1000; n <= 10000000; n += n / 50) {
    const auto k = bin_resolution(n);
    EXPECT_GE(k, prev) << n;
    prev = k;
  }
  EXPECT_THROW(bin_resolution(2), DomainError);
}

TEST(ThresholdLevel, Examples) {
  EXPECT_NEAR(threshold_level(1000000), 0.26904, 5e-6);
  EXPECT_DOUBLE_EQ(threshold_level(55), 1.0 / std::sqrt(std::log(55.0)));
  EXPECT_NEAR(threshold_level(55), 0.5, 5e-4);
  double prev = 1.0;
  for (std::int64_t n = 8; n < 100000000; n = n * 3 / 2 + 1) {
    const double c = threshold_level(n);
    EXPECT_LT(c, prev);
    prev = c;
  }
  EXPECT_THROW(threshold_level(7), DomainError);
}

TEST(RawHistogram, Examples) {
  EXPECT_EQ(raw_histogram(BinCounts{4, {0, 0, 0, 0}}, 10), GridFunction::constant(4, 0.0));
  EXPECT_EQ(raw_histogram(BinCounts{2, {3, 1}}, 4), GridFunction({1.5, 0.5}));
}

TEST(RawHistogram, UnbiasedUnderBothModels) {
  const Density f({0.4, 1.6, 1.0, 1.0});
  for (Model model : {Model::iid, Model::poisson}) {
    const auto cells = run_mc(
        [&](Rng& rng, std::int64_t, std::span<double> out) {
          const auto pts = model == Model::iid ? sample_iid(f, 1000, rng).points
                                               : sample_poisson_process(f, 1000, rng).points;
          const auto h = raw_histogram(bin_counts(pts, 2), 1000);
          out[0] = h[0];
          out[1] = h[1];
        },
        2, 10000, 21);
    EXPECT_NEAR(cells[0].mean, 1.0, 4 * cells[0].std_error);
    EXPECT_NEAR(cells[1].mean, 1.0, 4 * cells[1].std_error);
  }
  const auto uni = run_mc(
      [](Rng& rng, std::int64_t, std::span<double> out) {
        const auto h = raw_histogram(bin_counts(sample_iid(Density({1.0}), 1000, rng).points, 3), 1000);
        for (std::size_t j = 0; j < 3; ++j) out[j] = h[j];
      },
      3, 10000, 22);
  for (const auto& r : uni) EXPECT_NEAR(r.mean, 1.0, 4 * r.std_error);
}

TEST(ThresholdHistogram, Examples) {
  const auto t = threshold_histogram(GridFunction({0.4, 0.6, 5.0, 0.5}), 0.25);
  EXPECT_EQ(t, GridFunction({0.0, 0.6, 4.0, 0.5}));
  EXPECT_EQ(threshold_histogram(GridFunction::constant(3, 0.0), 0.3), GridFunction::constant(3, 0.0));
}

TEST(ThresholdHistogram, RangeIdempotenceMonotonicity) {
  Rng rng(23, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const double c = 0.05 + 0.6 * rng.uniform();
    std::vector<double> a(32), b(32);
    for (std::size_t j = 0; j < 32; ++j) {
      a[j] = 3.0 / c * rng.uniform();
      b[j] = a[j] + rng.uniform() * (rng.uniform() < 0.5 ? 0.0 : 2.0);
    }
    const auto ta = threshold_histogram(GridFunction(a), c), tb = threshold_histogram(GridFunction(b), c);
    EXPECT_EQ(threshold_histogram(ta, c), ta);
    for (std::size_t j = 0; j < 32; ++j) {
      EXPECT_TRUE(ta[j] == 0.0 || (ta[j] >= 2 * c && ta[j] <= 1 / c)) << ta[j];
      EXPECT_LE(ta[j], tb[j]);
    }
    const auto ua = truncate_below(GridFunction(a), c), ub = truncate_below(GridFunction(b), c);
    for (std::size_t j = 0; j < 32; ++j) EXPECT_LE(ua[j], ub[j]);
  }
}

TEST(TruncateBelow, Examples) {
  EXPECT_EQ(truncate_below(GridFunction::constant(4, 1.0), 0.4), GridFunction::constant(4, 1.0));
  EXPECT_EQ(truncate_below(GridFunction::constant(4, 1.0), 0.6), GridFunction::constant(4, 0.0));
  EXPECT_EQ(truncate_below(GridFunction({0.5, 1.5}), 0.4), GridFunction({0.0, 1.5}));
}

TEST(ThresholdedEstimate, ComposesPipeline) {
  Rng rng(24, 0);
  const auto pts = sample_iid(builtin_density("tent", 64), 5000, rng).points;
  const auto cfg = EstimatorConfig::for_sample_size(5000);
  EXPECT_EQ(cfg.bins, bin_resolution(5000));
  EXPECT_EQ(thresholded_estimate(pts, cfg),
            threshold_histogram(raw_histogram(bin_counts(pts, cfg.bins), 5000), cfg.threshold));
}
