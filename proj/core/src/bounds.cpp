#include "poissonlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "poissonlab/distributions.hpp"
#include "poissonlab/errors.hpp"
#include "poissonlab/losses.hpp"

namespace poissonlab {

BoundReport BoundReport::compare(double lhs, double rhs, double trivial_limit) {
  BoundReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.holds = lhs <= rhs + 1e-12 * std::max(1.0, std::abs(rhs));
  r.vacuous = rhs >= trivial_limit;
  return r;
}

double lecam_additional_obs_bound(double r, double beta_n) {
  if (!(r >= 0.0) || !(beta_n >= 0.0)) throw DomainError("lecam_additional_obs_bound: inputs must be >= 0");
  return std::sqrt(8.0 * r * beta_n);
}

double poisson_pair_bound(double n, double m) {
  if (!(n > 0.0)) throw DomainError("poisson_pair_bound: n must be positive");
  if (!(m >= 0.0)) throw DomainError("poisson_pair_bound: m must be >= 0");
  return m / std::sqrt(2.0 * n);
}

namespace {

// int (f - f0)^2 / (f + w f0) with 0/0 := 0.
double weighted_chi_square(const GridFunction& f, const GridFunction& f0, double w) {
  return integrate(f, f0, [w](double u, double v) {
    const double num = (u - v) * (u - v);
    return num == 0.0 ? 0.0 : num / (u + w * v);
  });
}

void require_nonnegative(const GridFunction& f, const char* who) {
  if (!f.nonnegative()) throw DomainError(std::string(who) + ": negative input cell");
}

}  // namespace

BoundReport superposition_check(const GridFunction& f, const GridFunction& f0, double n, double m) {
  if (!(n > 0.0) || !(m > 0.0)) throw DomainError("superposition_check: n and m must be positive");
  require_nonnegative(f, "superposition_check");
  require_nonnegative(f0, "superposition_check");
  // Intensities n f + m f0 and (n + m) f on the merged partition.
  const double total = n + m;
  const double affinity_gap = integrate(f, f0, [n, m, total](double u, double v) {
    const double a = n * u + m * v;
    const double b = total * u;
    if (a == b) return 0.0;
    const double d = (a - b) / (std::sqrt(a) + std::sqrt(b));
    return d * d;
  });
  const double lhs = -2.0 * std::expm1(-0.5 * affinity_gap);
  const double rhs = m * m / total * weighted_chi_square(f, f0, m / total);
  return BoundReport::compare(lhs, rhs, 2.0);
}

double neighborhood_functional(const GridFunction& f, const GridFunction& f0, double n) {
  if (!(n > 0.0)) throw DomainError("neighborhood_functional: n must be positive");
  require_nonnegative(f, "neighborhood_functional");
  require_nonnegative(f0, "neighborhood_functional");
  return weighted_chi_square(f, f0, 1.0 / std::sqrt(n));
}

double superposition_relaxed_rhs(const GridFunction& f, const GridFunction& f0, double n, double D) {
  return 2.0 * D * D * neighborhood_functional(f, f0, n);
}

double lemma3_neighborhood_bound(double D, double c_n) {
  if (!(D > 1.0)) {
    throw DomainError("lemma3_neighborhood_bound: D must exceed 1 (the superposition bound assumes m = D sqrt(n), D > 1)");
  }
  if (!(c_n >= 0.0)) throw DomainError("lemma3_neighborhood_bound: c_n must be >= 0");
  return 2.0 * D * std::sqrt(c_n);
}

bool in_neighborhood(const GridFunction& f, const GridFunction& f0, double n, double c_n) {
  return neighborhood_functional(f, f0, n) <= c_n;
}

std::string_view to_string(TailSide side) noexcept {
  switch (side) {
    case TailSide::upper: return "upper";
    case TailSide::lower: return "lower";
    case TailSide::two_sided: return "two-sided";
  }
  return "?";
}

BoundReport poisson_tail_check(double lambda, double m0, TailSide side) {
  if (!(lambda > 0.0) || !(m0 > 0.0)) throw DomainError("poisson_tail_check: lambda and m0 must be positive");
  const auto table = poisson_table(lambda);
  const double upper = table.sf(static_cast<std::int64_t>(std::ceil(lambda + m0)));
  const double lower_edge = lambda - m0;
  const double lower = lower_edge < 0.0 ? 0.0 : table.cdf(static_cast<std::int64_t>(std::floor(lower_edge)));
  double lhs = 0.0;
  switch (side) {
    case TailSide::upper: lhs = upper; break;
    case TailSide::lower: lhs = lower; break;
    case TailSide::two_sided: lhs = std::min(1.0, upper + lower); break;
  }
  const double rhs = std::exp(-m0 * m0 * m0 / ((m0 + lambda) * (m0 + lambda)));
  return BoundReport::compare(lhs, rhs, 1.0);
}

BoundReport lemma2_tail_check(std::int64_t n, double D) {
  if (n < 1) throw DomainError("lemma2_tail_check: n must be >= 1");
  if (!(D > 0.0)) throw DomainError("lemma2_tail_check: D must be positive");
  const double extra = std::ceil(D * std::sqrt(static_cast<double>(n)));
  const double lhs = poisson_cdf(n - 1, static_cast<double>(n) + extra);
  return BoundReport::compare(lhs, 2.0 / (D * D), 1.0);
}

}  // namespace poissonlab
