#pragma once

#include <cstddef>
#include <cstdint>

#include "poissonlab/experiments.hpp"
#include "poissonlab/gridfn.hpp"

namespace poissonlab {

/// Histogram size ceil(n / (ln n)^4). Requires n >= 3.
std::size_t bin_resolution(std::int64_t n);

/// Threshold level 1 / sqrt(ln n). Requires n >= 8 so that c_n <= 1/sqrt(2).
double threshold_level(std::int64_t n);

struct EstimatorConfig {
  double n;
  std::size_t bins;
  double threshold;

  EstimatorConfig(double n, std::size_t bins, double threshold);
  /// Bins and threshold from bin_resolution / threshold_level.
  static EstimatorConfig for_sample_size(std::int64_t n);
};

/// (k/n) N_j on cell j. The nominal n is used even when the realized count
/// is random (Poisson model).
GridFunction raw_histogram(const BinCounts& bc, double n);

/// Cellwise: 0 below 2c, 1/c above 1/c, unchanged otherwise. Values exactly
/// equal to 2c are kept.
GridFunction threshold_histogram(const GridFunction& raw, double c);

/// Cellwise: keep values >= 2 eps, zero the rest.
GridFunction truncate_below(const GridFunction& estimate, double eps);

/// threshold_histogram(raw_histogram(bin_counts(points, bins), n), threshold).
GridFunction thresholded_estimate(std::span<const double> points, const EstimatorConfig& cfg);

}  // namespace poissonlab
