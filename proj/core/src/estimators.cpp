#include "poissonlab/estimators.hpp"

#include <cmath>
#include <string>

#include "poissonlab/errors.hpp"

namespace poissonlab {

std::size_t bin_resolution(std::int64_t n) {
  if (n < 3) throw DomainError("bin_resolution: n must be >= 3");
  const double nn = static_cast<double>(n);
  const double l = std::log(nn);
  return static_cast<std::size_t>(std::ceil(nn / (l * l * l * l)));
}

double threshold_level(std::int64_t n) {
  if (n < 8) throw DomainError("threshold_level: n must be >= 8");
  return 1.0 / std::sqrt(std::log(static_cast<double>(n)));
}

EstimatorConfig::EstimatorConfig(double n_, std::size_t bins_, double threshold_)
    : n(n_), bins(bins_), threshold(threshold_) {
  if (!(n > 0.0)) throw DomainError("EstimatorConfig: n must be positive");
  if (bins < 1) throw DomainError("EstimatorConfig: bins must be >= 1");
  if (!(threshold > 0.0) || 2.0 * threshold > 1.0 / threshold) {
    throw DomainError("EstimatorConfig: threshold must satisfy 0 < c <= 1/sqrt(2)");
  }
}

EstimatorConfig EstimatorConfig::for_sample_size(std::int64_t n) {
  return EstimatorConfig(static_cast<double>(n), bin_resolution(n), threshold_level(n));
}

GridFunction raw_histogram(const BinCounts& bc, double n) {
  if (!(n > 0.0)) throw DomainError("raw_histogram: n must be positive");
  const double scale = static_cast<double>(bc.k) / n;
  std::vector<double> values(bc.k);
  for (std::size_t j = 0; j < bc.k; ++j) values[j] = scale * static_cast<double>(bc.counts[j]);
  return GridFunction(std::move(values));
}

GridFunction threshold_histogram(const GridFunction& raw, double c) {
  if (!(c > 0.0) || 2.0 * c > 1.0 / c) {
    throw DomainError("threshold_histogram: c must satisfy 0 < c <= 1/sqrt(2)");
  }
  const double lower = 2.0 * c;
  const double upper = 1.0 / c;
  return raw.map([lower, upper](double v) {
    if (v < lower) return 0.0;
    if (v > upper) return upper;
    return v;
  });
}

GridFunction truncate_below(const GridFunction& estimate, double eps) {
  if (!(eps > 0.0)) throw DomainError("truncate_below: eps must be positive");
  const double cut = 2.0 * eps;
  return estimate.map([cut](double v) { return v >= cut ? v : 0.0; });
}

GridFunction thresholded_estimate(std::span<const double> points, const EstimatorConfig& cfg) {
  return threshold_histogram(raw_histogram(bin_counts(points, cfg.bins), cfg.n), cfg.threshold);
}

}  // namespace poissonlab
