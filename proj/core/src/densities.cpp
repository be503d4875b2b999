#include "poissonlab/densities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "poissonlab/errors.hpp"

namespace poissonlab {

const std::vector<std::string>& builtin_density_names() {
  static const std::vector<std::string> names{"uniform", "halfstep", "tent", "withzero"};
  return names;
}

namespace {

// Fraction of cell [j/k, (j+1)/k) covered by [lo/den, hi/den), in integer
// arithmetic so rational breakpoints give exact cell averages.
double covered_fraction(std::size_t j, std::size_t k, std::uint64_t lo, std::uint64_t hi, std::uint64_t den) {
  const std::uint64_t a = den * j, b = den * (j + 1);
  const std::uint64_t left = std::max<std::uint64_t>(a, lo * k), right = std::min<std::uint64_t>(b, hi * k);
  return right > left ? static_cast<double>(right - left) / static_cast<double>(den) : 0.0;
}

double tent_average(double a, double b) {
  // Integral of min(4x, 4(1-x)) over [a, b), split at 1/2.
  auto left = [](double x) { return 2.0 * x * x; };            // antiderivative of 4x
  auto right = [](double x) { return 4.0 * x - 2.0 * x * x; };  // antiderivative of 4(1-x)
  double total = 0.0;
  if (a < 0.5) total += left(std::min(b, 0.5)) - left(a);
  if (b > 0.5) total += right(b) - right(std::max(a, 0.5));
  return total / (b - a);
}

}  // namespace

Density builtin_density(std::string_view name, std::size_t resolution) {
  if (resolution < 1) throw ResolutionError("builtin_density: resolution must be >= 1");
  const double k = static_cast<double>(resolution);
  std::vector<double> v(resolution);
  for (std::size_t j = 0; j < resolution; ++j) {
    const double a = static_cast<double>(j) / k;
    const double b = static_cast<double>(j + 1) / k;
    if (name == "uniform") {
      v[j] = 1.0;
    } else if (name == "halfstep") {
      v[j] = 2.0 * covered_fraction(j, resolution, 0, 1, 2);
    } else if (name == "tent") {
      v[j] = tent_average(a, b);
    } else if (name == "withzero") {
      v[j] = 1.25 * (1.0 - covered_fraction(j, resolution, 2, 3, 5));
    } else {
      throw ConfigurationError("unknown built-in density '" + std::string(name) +
                                  "' (expected uniform|halfstep|tent|withzero)");
    }
  }
  return Density(GridFunction(std::move(v)));
}

Density random_density(Rng& rng, std::size_t resolution, double zero_probability) {
  std::vector<double> v(resolution);
  bool any = false;
  for (auto& x : v) {
    if (rng.uniform() < zero_probability) {
      x = 0.0;
    } else {
      x = -std::log1p(-rng.uniform()) + 1e-3;
      any = true;
    }
  }
  if (!any) v[rng.below(static_cast<std::uint32_t>(resolution))] = 1.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(resolution);
  for (auto& x : v) x /= mean;
  return Density(GridFunction(std::move(v)));
}

GridFunction random_grid_function(Rng& rng, std::size_t resolution) {
  const double step = std::exp2(-6.0 * rng.uniform());
  const double offset = 4.0 * (rng.uniform() - 0.5);
  std::vector<double> v(resolution);
  double level = offset;
  for (auto& x : v) {
    level += step * (rng.uniform() - 0.5);
    if (rng.uniform() < 0.01) level += 2.0 * (rng.uniform() - 0.5);
    x = level;
  }
  return GridFunction(std::move(v));
}

}  // namespace poissonlab
