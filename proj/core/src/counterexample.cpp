#include "poissonlab/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <string>

#include "poissonlab/distributions.hpp"
#include "poissonlab/errors.hpp"
#include "poissonlab/summation.hpp"

namespace poissonlab {

std::int64_t zero_count(std::int64_t n, double beta) {
  if (n < 1) throw ConfigurationError("zero_count: n must be >= 1");
  const double x = std::pow(static_cast<double>(n), beta);
  // Snap values within rounding of an integer (exact powers such as 2^{0.5 * 20}).
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * x) return static_cast<std::int64_t>(nearest);
  return static_cast<std::int64_t>(std::floor(x));
}

std::int64_t target_m(std::int64_t n, double beta) {
  if (n < 4) throw ConfigurationError("target_m: n must be >= 4");
  const double e_inv = std::exp(-1.0);
  const double nn = static_cast<double>(n);
  const double z = static_cast<double>(zero_count(n, beta));
  const double m = std::floor(nn * (1.0 - e_inv) + z * (2.0 * e_inv - 1.0) - std::sqrt(nn));
  if (m < 1.0) {
    throw ConfigurationError("target_m: m = " + std::to_string(m) + " < 1; n = " + std::to_string(n) +
                             " is too small for this regime");
  }
  return static_cast<std::int64_t>(m);
}

CounterexampleConfig CounterexampleConfig::make(std::int64_t n, double beta, std::int64_t reps,
                                                std::uint64_t seed) {
  if (!(beta > 0.5 && beta < 1.0)) throw ConfigurationError("beta must lie in (1/2, 1)");
  CounterexampleConfig cfg;
  cfg.n = n;
  cfg.beta = beta;
  cfg.zero_cells = zero_count(n, beta);
  cfg.target = target_m(n, beta);
  cfg.reps = reps;
  cfg.seed = seed;
  cfg.validate();
  return cfg;
}

void CounterexampleConfig::validate() const {
  if (!(beta > 0.5 && beta < 1.0)) throw ConfigurationError("beta must lie in (1/2, 1)");
  if (zero_cells < 1 || zero_cells >= n) {
    throw ConfigurationError("zero cell count must satisfy 1 <= z < n");
  }
  if (target < 0 || target > n - zero_cells) {
    throw ConfigurationError("target m must satisfy 0 <= m <= n - z");
  }
  if (reps < 0) throw ConfigurationError("reps must be >= 0");
}

std::vector<double> make_fbeta(std::int64_t n, double beta, std::span<const std::int64_t> zero_set) {
  const std::int64_t z = zero_count(n, beta);
  if (z < 1 || z >= n) {
    throw ConfigurationError("make_fbeta: floor(n^beta) = " + std::to_string(z) + " must lie in [1, n)");
  }
  if (static_cast<std::int64_t>(zero_set.size()) != z) {
    throw ConfigurationError("make_fbeta: zero set has " + std::to_string(zero_set.size()) +
                             " cells, expected floor(n^beta) = " + std::to_string(z));
  }
  std::vector<double> masses(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n - z));
  std::set<std::int64_t> seen;
  for (auto idx : zero_set) {
    if (idx < 1 || idx > n) throw ConfigurationError("make_fbeta: zero index out of 1..n");
    if (!seen.insert(idx).second) throw ConfigurationError("make_fbeta: duplicate zero index");
    masses[static_cast<std::size_t>(idx - 1)] = 0.0;
  }
  return masses;
}

std::vector<std::int64_t> draw_zero_set(std::int64_t n, std::int64_t z, Rng& rng) {
  if (z < 0 || z > n) throw ConfigurationError("draw_zero_set: need 0 <= z <= n");
  std::set<std::int64_t> chosen;
  for (std::int64_t j = n - z + 1; j <= n; ++j) {
    const auto t = static_cast<std::int64_t>(rng.below(static_cast<std::uint32_t>(j))) + 1;
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  return {chosen.begin(), chosen.end()};
}

std::vector<double> make_fbeta(std::int64_t n, double beta, Rng& rng) {
  const auto zeros = draw_zero_set(n, zero_count(n, beta), rng);
  return make_fbeta(n, beta, zeros);
}

GridFunction fbeta_function(std::span<const double> masses) {
  const double n = static_cast<double>(masses.size());
  std::vector<double> v(masses.size());
  std::transform(masses.begin(), masses.end(), v.begin(), [n](double m) { return n * m; });
  return GridFunction(std::move(v));
}

double conditional_bayes_risk(std::int64_t n, std::int64_t z, std::int64_t m, std::int64_t K) {
  if (K < 0 || K > n - z) throw DomainError("conditional_bayes_risk: need 0 <= K <= n - z");
  if (K >= m) return 0.0;
  if (m - K > n - z - K) return 1.0;
  CompensatedSum log_success;
  for (std::int64_t j = 0; j < m - K; ++j) {
    log_success += std::log1p(-static_cast<double>(z) / static_cast<double>(n - K - j));
  }
  return std::clamp(-std::expm1(log_success.value()), 0.0, 1.0);
}

std::vector<double> conditional_risk_table(std::int64_t n, std::int64_t z, std::int64_t m) {
  if (m < 0) throw DomainError("conditional_risk_table: m must be >= 0");
  std::vector<double> risk(static_cast<std::size_t>(m) + 1, 0.0);
  // log P(all guesses land on nonzero cells | K) = sum_{i=K}^{m-1} log(1 - z/(n-i)).
  double suffix_hi = 0.0;
  double suffix_lo = 0.0;
  bool impossible = false;
  for (std::int64_t K = m - 1; K >= 0; --K) {
    const double remaining = static_cast<double>(n - K);
    if (n - z - K <= 0) impossible = true;
    if (impossible) {
      risk[static_cast<std::size_t>(K)] = 1.0;
      continue;
    }
    // Two-term compensated accumulation.
    const double term = std::log1p(-static_cast<double>(z) / remaining);
    const double t = suffix_hi + term;
    suffix_lo += std::abs(suffix_hi) >= std::abs(term) ? (suffix_hi - t) + term : (term - t) + suffix_hi;
    suffix_hi = t;
    risk[static_cast<std::size_t>(K)] = std::clamp(-std::expm1(suffix_hi + suffix_lo), 0.0, 1.0);
  }
  return risk;
}

namespace {

std::optional<std::vector<double>> occupied_law(Model model, std::int64_t n, std::int64_t z,
                                                std::int64_t up_to) {
  const std::int64_t cells = n - z;
  std::vector<double> law(static_cast<std::size_t>(up_to) + 1, 0.0);
  if (model == Model::poisson) {
    const auto table = binomial_table(cells, -std::expm1(-static_cast<double>(n) / static_cast<double>(cells)));
    for (std::int64_t K = 0; K <= up_to; ++K) law[static_cast<std::size_t>(K)] = table.pmf(K);
    return law;
  }
  if (static_cast<double>(n) * static_cast<double>(cells) > kOccupancyDpBudget) return std::nullopt;
  const auto pmf = occupancy_pmf_iid(n, cells);
  for (std::int64_t K = 0; K <= up_to && K < static_cast<std::int64_t>(pmf.size()); ++K) {
    law[static_cast<std::size_t>(K)] = pmf[static_cast<std::size_t>(K)];
  }
  return law;
}

void check_problem(std::int64_t n, std::int64_t z, std::int64_t m) {
  if (n < 1 || z < 0 || z >= n || m < 0) throw ConfigurationError("need n >= 1, 0 <= z < n, m >= 0");
}

}  // namespace

std::optional<double> shortfall_probability_exact(Model model, std::int64_t n, std::int64_t z, std::int64_t m) {
  check_problem(n, z, m);
  if (m == 0) return 0.0;
  if (m > std::min(n - z, n)) return 1.0;
  const auto law = occupied_law(model, n, z, m - 1);
  if (!law) return std::nullopt;
  CompensatedSum s;
  for (double p : *law) s += p;
  return std::min(1.0, s.value());
}

std::optional<double> bayes_risk_exact(Model model, std::int64_t n, std::int64_t z, std::int64_t m) {
  check_problem(n, z, m);
  if (m == 0) return 0.0;
  const auto law = occupied_law(model, n, z, m);
  if (!law) return std::nullopt;
  const auto risk = conditional_risk_table(n, z, m);
  CompensatedSum s;
  for (std::size_t K = 0; K < law->size(); ++K) s += (*law)[K] * risk[K];
  return std::clamp(s.value(), 0.0, 1.0);
}

Lemma1Result lemma1(Model model, const CounterexampleConfig& cfg, McOptions options) {
  cfg.validate();
  const std::int64_t n = cfg.n;
  const std::int64_t z = cfg.zero_cells;
  const std::int64_t m = cfg.target;

  Lemma1Result out;
  out.shortfall.exact = shortfall_probability_exact(model, n, z, m);
  out.risk.exact = bayes_risk_exact(model, n, z, m);
  if (out.shortfall.exact && out.risk.exact) out.gap.exact = *out.shortfall.exact - *out.risk.exact;

  if (cfg.reps == 0) {
    if (!out.shortfall.exact || !out.risk.exact) {
      throw ConfigurationError("iid exact computation exceeds the work budget and reps = 0");
    }
    out.shortfall.mean = *out.shortfall.exact;
    out.risk.mean = *out.risk.exact;
    out.gap.mean = *out.gap.exact;
    return out;
  }

  const auto risk = conditional_risk_table(n, z, m);
  const auto cells = static_cast<std::uint32_t>(n - z);
  auto task = [&](Rng& rng, std::int64_t, std::span<double> values) {
    thread_local std::vector<std::uint64_t> mask;
    const std::int64_t balls = model == Model::iid ? n : sample_poisson(static_cast<double>(n), rng);
    const std::int64_t K = simulate_occupancy(balls, cells, rng, mask);
    const double shortfall = K < m ? 1.0 : 0.0;
    const double r = K < m ? risk[static_cast<std::size_t>(K)] : 0.0;
    values[0] = shortfall;
    values[1] = r;
    values[2] = shortfall - r;
  };
  const auto mc = run_mc(task, 3, cfg.reps, cfg.seed, options);
  auto fill = [&cfg](RiskEstimate& e, const McResult& r) {
    e.mean = r.mean;
    e.std_error = r.std_error;
    e.reps = cfg.reps;
  };
  fill(out.shortfall, mc[0]);
  fill(out.risk, mc[1]);
  fill(out.gap, mc[2]);
  return out;
}

RiskEstimate bayes_risk(Model model, const CounterexampleConfig& cfg, McOptions options) {
  return lemma1(model, cfg, options).risk;
}

RiskEstimate occupancy_shortfall_prob(Model model, const CounterexampleConfig& cfg, McOptions options) {
  return lemma1(model, cfg, options).shortfall;
}

std::pair<double, double> asymptotic_limits() {
  const double root_e = std::sqrt(std::numbers::e);
  return {normal_cdf(-root_e), normal_cdf(-root_e / std::sqrt(1.0 - std::exp(-1.0)))};
}

}  // namespace poissonlab
