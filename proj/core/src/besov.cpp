#include "poissonlab/besov.hpp"

#include <cmath>
#include <string>

#include "poissonlab/errors.hpp"

namespace poissonlab {

BesovParams::BesovParams(double alpha_, double p_, double q_, double radius_)
    : alpha(alpha_), p(p_), q(q_), radius(radius_) {
  if (!(alpha > 0.0) || !(p >= 1.0) || !(q >= 1.0) || !(radius > 0.0)) {
    throw DomainError("BesovParams: need alpha > 0, p >= 1, q >= 1, M > 0");
  }
}

double BesovParams::tail_constant() const { return tail_constant(radius); }

double BesovParams::tail_constant(double radius_override) const {
  const double two_a = std::exp2(alpha);
  return radius_override * two_a / (two_a - 1.0);
}

namespace {

double lp_distance(const GridFunction& a, const GridFunction& b, double p) {
  const double integral = integrate(a, b, [p](double u, double v) { return std::pow(std::abs(u - v), p); });
  return std::pow(integral, 1.0 / p);
}

void require_dyadic(const GridFunction& f, const char* who) {
  if (!f.is_dyadic()) {
    throw ResolutionError(std::string(who) + ": resolution " + std::to_string(f.resolution()) +
                          " is not a power of two");
  }
}

}  // namespace

std::vector<double> besov_ladder_terms(const GridFunction& f, double alpha, double p) {
  require_dyadic(f, "besov_norm");
  std::size_t levels = 0;
  while ((std::size_t{1} << levels) < f.resolution()) ++levels;

  // averages[i] = f_(2^i); built top-down by pairwise averaging.
  std::vector<GridFunction> averages;
  averages.reserve(levels + 1);
  averages.push_back(f);
  for (std::size_t i = levels; i > 0; --i) {
    averages.push_back(coarsen(averages.back(), std::size_t{1} << (i - 1)));
  }
  std::vector<double> terms(levels);
  for (std::size_t i = 0; i < levels; ++i) {
    const GridFunction& fine = averages[levels - i - 1];
    const GridFunction& coarse = averages[levels - i];
    terms[i] = std::exp2(static_cast<double>(i) * alpha) * lp_distance(fine, coarse, p);
  }
  return terms;
}

double besov_norm(const GridFunction& f, const BesovParams& params) {
  const auto terms = besov_ladder_terms(f, params.alpha, params.p);
  double sum = std::pow(std::abs(integrate(f)), params.q);
  for (double t : terms) sum += std::pow(t, params.q);
  return std::pow(sum, 1.0 / params.q);
}

bool in_ball(const GridFunction& f, const BesovParams& params) {
  return besov_norm(f, params) <= params.radius;
}

double approximation_lp_error(const GridFunction& f, std::size_t k, double p) {
  if (!(p >= 1.0)) throw DomainError("approximation_lp_error: p must be >= 1");
  const GridFunction coarse = coarsen(f, k);
  return integrate(f, coarse, [p](double u, double v) { return std::pow(std::abs(u - v), p); });
}

double approximation_bound_rhs(const BesovParams& params, std::size_t k, double p) {
  const double kk = static_cast<double>(k);
  return std::pow(params.tail_constant(), p) / std::pow(kk, params.alpha * p);
}

double exceedance_measure(const GridFunction& f, std::size_t k, double t) {
  if (!(t > 0.0)) throw DomainError("exceedance_measure: threshold must be positive");
  const GridFunction coarse = coarsen(f, k);
  return integrate(f, coarse, [t](double u, double v) { return std::abs(u - v) > t ? 1.0 : 0.0; });
}

double condition15_rhs(const BesovParams& params, std::size_t k,
                       std::optional<double> tail_constant_override) {
  if (k < 2) throw DomainError("condition15_rhs: k must be >= 2 (log k > 0)");
  const double m1 = tail_constant_override ? *tail_constant_override : params.tail_constant();
  const double kk = static_cast<double>(k);
  return std::pow(m1, params.p) * std::pow(kk, -params.alpha * params.p) *
         std::pow(std::log(kk), params.p / 2.0);
}

}  // namespace poissonlab
