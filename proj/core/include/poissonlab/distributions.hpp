#pragma once

#include <cstdint>
#include <vector>

namespace poissonlab {

/// Standard normal CDF.
double normal_cdf(double x);

/// Probability mass function of an integer-valued law tabulated over its
/// numerically nonzero support. Terms are generated by ratio recursion from
/// the mode and extended until they fall below 1e-300 of the modal term,
/// then normalized, so tails are resolved down to double underflow.
class DiscreteTable {
 public:
  DiscreteTable(std::int64_t first, std::vector<double> pmf);

  std::int64_t first() const noexcept { return first_; }
  std::int64_t last() const noexcept { return first_ + static_cast<std::int64_t>(pmf_.size()) - 1; }

  double pmf(std::int64_t k) const noexcept;
  /// P(X <= k)
  double cdf(std::int64_t k) const noexcept;
  /// P(X >= k)
  double sf(std::int64_t k) const noexcept;

 private:
  std::int64_t first_;
  std::vector<double> pmf_;
  std::vector<double> lower_;  // lower_[i] = P(X <= first + i)
  std::vector<double> upper_;  // upper_[i] = P(X >= first + i)
};

DiscreteTable poisson_table(double lambda);
DiscreteTable binomial_table(std::int64_t trials, double p);

double poisson_cdf(std::int64_t k, double lambda);
double poisson_sf(std::int64_t k, double lambda);
double binomial_cdf(std::int64_t k, std::int64_t trials, double p);

}  // namespace poissonlab
