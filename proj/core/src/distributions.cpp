#include "poissonlab/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <numbers>

#include "poissonlab/errors.hpp"
#include "poissonlab/summation.hpp"

namespace poissonlab {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

DiscreteTable::DiscreteTable(std::int64_t first, std::vector<double> pmf)
    : first_(first), pmf_(std::move(pmf)), lower_(pmf_.size()), upper_(pmf_.size()) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < pmf_.size(); ++i) {
    acc += pmf_[i];
    lower_[i] = std::min(1.0, acc.value());
  }
  CompensatedSum tail;
  for (std::size_t i = pmf_.size(); i-- > 0;) {
    tail += pmf_[i];
    upper_[i] = std::min(1.0, tail.value());
  }
}

double DiscreteTable::pmf(std::int64_t k) const noexcept {
  if (k < first_ || k > last()) return 0.0;
  return pmf_[static_cast<std::size_t>(k - first_)];
}

double DiscreteTable::cdf(std::int64_t k) const noexcept {
  if (k < first_) return 0.0;
  if (k >= last()) return 1.0;
  return lower_[static_cast<std::size_t>(k - first_)];
}

double DiscreteTable::sf(std::int64_t k) const noexcept {
  if (k <= first_) return 1.0;
  if (k > last()) return 0.0;
  return upper_[static_cast<std::size_t>(k - first_)];
}

namespace {

constexpr double kCutoff = 1e-300;

// Builds a table from the mode outward. `up(j)` is pmf(j+1)/pmf(j) and
// `down(j)` is pmf(j-1)/pmf(j).
DiscreteTable from_mode(std::int64_t mode, std::int64_t lo, std::int64_t hi,
                        const std::function<double(std::int64_t)>& up,
                        const std::function<double(std::int64_t)>& down) {
  std::deque<double> terms{1.0};
  std::int64_t first = mode;
  double t = 1.0;
  for (std::int64_t j = mode; j < hi; ++j) {
    t *= up(j);
    if (t < kCutoff) break;
    terms.push_back(t);
  }
  t = 1.0;
  for (std::int64_t j = mode; j > lo; --j) {
    t *= down(j);
    if (t < kCutoff) break;
    terms.push_front(t);
    first = j - 1;
  }
  CompensatedSum total;
  for (double x : terms) total += x;
  const double norm = total.value();
  std::vector<double> pmf(terms.begin(), terms.end());
  for (double& x : pmf) x /= norm;
  return DiscreteTable(first, std::move(pmf));
}

}  // namespace

DiscreteTable poisson_table(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("poisson_table: lambda must be >= 0");
  if (lambda == 0.0) return DiscreteTable(0, {1.0});
  const auto mode = static_cast<std::int64_t>(std::floor(lambda));
  return from_mode(
      mode, 0, std::numeric_limits<std::int64_t>::max(),
      [lambda](std::int64_t j) { return lambda / static_cast<double>(j + 1); },
      [lambda](std::int64_t j) { return static_cast<double>(j) / lambda; });
}

DiscreteTable binomial_table(std::int64_t trials, double p) {
  if (trials < 0) throw DomainError("binomial_table: trials must be >= 0");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binomial_table: p must lie in [0,1]");
  if (p == 0.0 || trials == 0) return DiscreteTable(0, {1.0});
  if (p == 1.0) return DiscreteTable(trials, {1.0});
  const double odds = p / (1.0 - p);
  const auto mode = std::min<std::int64_t>(
      trials, static_cast<std::int64_t>(std::floor(static_cast<double>(trials + 1) * p)));
  const double n = static_cast<double>(trials);
  return from_mode(
      mode, 0, trials,
      [n, odds](std::int64_t j) { return (n - static_cast<double>(j)) / static_cast<double>(j + 1) * odds; },
      [n, odds](std::int64_t j) {
        return static_cast<double>(j) / (n - static_cast<double>(j) + 1.0) / odds;
      });
}

double poisson_cdf(std::int64_t k, double lambda) { return poisson_table(lambda).cdf(k); }
double poisson_sf(std::int64_t k, double lambda) { return poisson_table(lambda).sf(k); }
double binomial_cdf(std::int64_t k, std::int64_t trials, double p) {
  return binomial_table(trials, p).cdf(k);
}

}  // namespace poissonlab
