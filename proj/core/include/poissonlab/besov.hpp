#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "poissonlab/gridfn.hpp"

namespace poissonlab {

/// Parameters (alpha, p, q, M) of a Besov ball.
struct BesovParams {
  double alpha;
  double p;
  double q;
  double radius;

  BesovParams(double alpha, double p, double q, double radius);

  /// M_1 = M 2^alpha / (2^alpha - 1), the geometric-tail constant.
  double tail_constant() const;
  /// Same constant for an arbitrary radius.
  double tail_constant(double radius_override) const;
};

/// Dyadic-ladder Besov norm
///   { |int f|^q + sum_{i<J} (2^{i alpha} || f_(2^{i+1}) - f_(2^i) ||_p)^q }^{1/q}
/// for f at resolution 2^J. Levels i >= J vanish identically.
double besov_norm(const GridFunction& f, const BesovParams& params);

/// The individual ladder terms 2^{i alpha} ||f_(2^{i+1}) - f_(2^i)||_p, i = 0..J-1.
std::vector<double> besov_ladder_terms(const GridFunction& f, double alpha, double p);

bool in_ball(const GridFunction& f, const BesovParams& params);

/// int |f - f_(k)|^p.
double approximation_lp_error(const GridFunction& f, std::size_t k, double p);

/// (M 2^alpha / (2^alpha - 1))^p / k^{alpha p}.
double approximation_bound_rhs(const BesovParams& params, std::size_t k, double p);

/// Lebesgue measure of {x : |f - f_(k)|(x) > t}.
double exceedance_measure(const GridFunction& f, std::size_t k, double t);

/// M_1^p k^{-alpha p} (ln k)^{p/2}, with p = params.p. Requires k >= 2.
double condition15_rhs(const BesovParams& params, std::size_t k,
                       std::optional<double> tail_constant_override = std::nullopt);

}  // namespace poissonlab
