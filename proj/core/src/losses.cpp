#include "poissonlab/losses.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "poissonlab/errors.hpp"

namespace poissonlab {

namespace {

void require_nonnegative(const GridFunction& f, const char* who) {
  if (!f.nonnegative()) throw DomainError(std::string(who) + ": negative input cell");
}

}  // namespace

double hellinger_sq(const GridFunction& f, const GridFunction& g) {
  require_nonnegative(f, "hellinger_sq");
  require_nonnegative(g, "hellinger_sq");
  return integrate(f, g, [](double u, double v) {
    if (u == v) return 0.0;
    const double d = (u - v) / (std::sqrt(u) + std::sqrt(v));
    return d * d;
  });
}

double ln_loss(const GridFunction& f, const GridFunction& g, double n) {
  if (!(n >= 1.0)) throw DomainError("ln_loss: n must be >= 1");
  require_nonnegative(f, "ln_loss");
  require_nonnegative(g, "ln_loss");
  const double weight = 1.0 / std::sqrt(n);
  return integrate(f, g, [weight](double u, double v) {
    const double num = (v - u) * (v - u);
    if (num == 0.0) return 0.0;
    // Both nonnegative and not both zero, so the denominator is positive.
    return num / (u + weight * v);
  });
}

double hellinger_sq_poisson(const GridFunction& g_intensity, const GridFunction& h_intensity) {
  require_nonnegative(g_intensity, "hellinger_sq_poisson");
  require_nonnegative(h_intensity, "hellinger_sq_poisson");
  const double h2 = hellinger_sq(g_intensity, h_intensity);
  return -2.0 * std::expm1(-0.5 * h2);
}

double l2_sq(const GridFunction& f, const GridFunction& g) {
  return integrate(f, g, [](double u, double v) { return (u - v) * (u - v); });
}

double sup_dist(const GridFunction& f, const GridFunction& g) {
  double best = 0.0;
  integrate(f, g, [&best](double u, double v) {
    best = std::max(best, std::abs(u - v));
    return 0.0;
  });
  return best;
}

std::string_view to_string(Metric metric) noexcept {
  switch (metric) {
    case Metric::ln: return "ln";
    case Metric::hellinger2: return "hellinger2";
    case Metric::scaled_hellinger2: return "scaled-hellinger2";
    case Metric::l2: return "l2";
    case Metric::sup: return "sup";
  }
  return "?";
}

Metric parse_metric(std::string_view name) {
  for (Metric m : {Metric::ln, Metric::hellinger2, Metric::scaled_hellinger2, Metric::l2, Metric::sup}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown metric '" + std::string(name) +
                              "' (expected ln|hellinger2|scaled-hellinger2|l2|sup)");
}

double evaluate_metric(Metric metric, const GridFunction& truth, const GridFunction& estimate, double n) {
  switch (metric) {
    case Metric::ln: return ln_loss(truth, estimate, n);
    case Metric::hellinger2: return hellinger_sq(estimate, truth);
    case Metric::scaled_hellinger2: return std::sqrt(n) * hellinger_sq(estimate, truth);
    case Metric::l2: return l2_sq(estimate, truth);
    case Metric::sup: return sup_dist(estimate, truth);
  }
  throw std::logic_error("evaluate_metric: unhandled metric");
}

}  // namespace poissonlab
