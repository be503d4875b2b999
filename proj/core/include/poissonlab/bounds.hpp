#pragma once

#include <cstdint>
#include <string_view>

#include "poissonlab/gridfn.hpp"

namespace poissonlab {

/// An exact quantity (lhs) compared with a displayed upper bound (rhs).
struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
  /// rhs at or beyond the trivial range of the bounded quantity.
  bool vacuous = false;
  double margin = 0.0;

  /// holds <=> lhs <= rhs + 1e-12 max(1, |rhs|); vacuous <=> rhs >= trivial_limit.
  static BoundReport compare(double lhs, double rhs, double trivial_limit);
};

/// sqrt(8 r beta_n).
double lecam_additional_obs_bound(double r, double beta_n);

/// m / sqrt(2n). Deficiencies are at most 2, so values above 2 are vacuous.
double poisson_pair_bound(double n, double m);

/// lhs = H^2(P_{nf + m f0}, P_{(n+m) f}) in closed form;
/// rhs = m^2/(n+m) int (f - f0)^2 / (f + m f0/(n+m)).
BoundReport superposition_check(const GridFunction& f, const GridFunction& f0, double n, double m);

/// int (f - f0)^2 / (f + n^{-1/2} f0), 0/0 := 0.
double neighborhood_functional(const GridFunction& f, const GridFunction& f0, double n);

/// 2 D^2 * neighborhood_functional(f, f0, n): the relaxed right-hand side for m = D sqrt n.
double superposition_relaxed_rhs(const GridFunction& f, const GridFunction& f0, double n, double D);

/// 2 D sqrt(c_n). Requires D > 1.
double lemma3_neighborhood_bound(double D, double c_n);

/// neighborhood_functional(f, f0, n) <= c_n.
bool in_neighborhood(const GridFunction& f, const GridFunction& f0, double n, double c_n);

enum class TailSide { upper, lower, two_sided };
std::string_view to_string(TailSide side) noexcept;

/// N ~ Poisson(lambda). lhs is the exact tail
///   upper:     P(N - lambda >= m0)
///   lower:     P(N - lambda <= -m0)
///   two_sided: P(|N - lambda| >= m0)
/// and rhs = exp(-m0^3 / (m0 + lambda)^2).
BoundReport poisson_tail_check(double lambda, double m0, TailSide side = TailSide::two_sided);

/// lhs = P(Poisson(n + ceil(D sqrt n)) <= n - 1), rhs = 2 / D^2.
BoundReport lemma2_tail_check(std::int64_t n, double D);

}  // namespace poissonlab
