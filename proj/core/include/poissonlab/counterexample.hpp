#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "poissonlab/experiments.hpp"
#include "poissonlab/gridfn.hpp"
#include "poissonlab/mc.hpp"

namespace poissonlab {

/// floor(n^beta): the number of zero cells of an F_{beta,n} member.
std::int64_t zero_count(std::int64_t n, double beta);

/// floor(n(1 - e^-1) + z(2e^-1 - 1) - sqrt n) with z = floor(n^beta).
/// Throws ConfigurationError when the result is < 1.
std::int64_t target_m(std::int64_t n, double beta);

/// The interval-selection problem on n cells: z zero cells, name m nonzero
/// cells correctly.
struct CounterexampleConfig {
  std::int64_t n = 0;
  double beta = 0.0;
  std::int64_t zero_cells = 0;
  std::int64_t target = 0;
  std::int64_t reps = 0;
  std::uint64_t seed = 0;

  /// z and m from zero_count / target_m.
  static CounterexampleConfig make(std::int64_t n, double beta, std::int64_t reps, std::uint64_t seed);

  /// Requires 1/2 < beta < 1, 1 <= z < n, 0 <= m <= n - z, reps >= 0.
  void validate() const;
  std::int64_t nonzero_cells() const noexcept { return n - zero_cells; }
};

/// Cell masses of an F_{beta,n} member: 0 on `zero_set` (1-based indices),
/// 1/(n - z) elsewhere.
std::vector<double> make_fbeta(std::int64_t n, double beta, std::span<const std::int64_t> zero_set);

/// Same, with the zero set drawn uniformly (the uniform prior on F_{beta,n}).
std::vector<double> make_fbeta(std::int64_t n, double beta, Rng& rng);

/// Uniform random z-subset of {1..n}, sorted (Floyd's algorithm).
std::vector<std::int64_t> draw_zero_set(std::int64_t n, std::int64_t z, Rng& rng);

/// Density values n * mass on the n-cell partition.
GridFunction fbeta_function(std::span<const double> masses);

/// Posterior mistake probability of the random-completion rule given K
/// occupied cells: 0 if K >= m, else
///   1 - prod_{j<m-K} (n - z - K - j) / (n - K - j).
/// Equals 1 when more guesses are needed than nonzero cells remain.
double conditional_bayes_risk(std::int64_t n, std::int64_t z, std::int64_t m, std::int64_t K);

/// conditional_bayes_risk for K = 0..m, via suffix sums of log factors.
std::vector<double> conditional_risk_table(std::int64_t n, std::int64_t z, std::int64_t m);

struct RiskEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t reps = 0;
  std::optional<double> exact;
};

/// Exact P(K < m) and R_n when available (always for the Poisson model,
/// within the dynamic-program budget for iid). m may exceed n - z here.
std::optional<double> shortfall_probability_exact(Model model, std::int64_t n, std::int64_t z, std::int64_t m);
std::optional<double> bayes_risk_exact(Model model, std::int64_t n, std::int64_t z, std::int64_t m);

/// Joint result of one set of replications: both estimates come from the
/// same occupied-count draws, so the gap is a paired difference.
struct Lemma1Result {
  RiskEstimate shortfall;
  RiskEstimate risk;
  RiskEstimate gap;  // P(K < m) - R_n
};

/// Replication i draws the occupied count K from stream (seed, i):
/// iid throws n balls into the n - z nonzero cells, poisson throws
/// Poisson(n) balls. Exact values are attached whenever available.
/// Throws ConfigurationError when reps == 0 and no exact value exists.
Lemma1Result lemma1(Model model, const CounterexampleConfig& cfg, McOptions options = {});

RiskEstimate bayes_risk(Model model, const CounterexampleConfig& cfg, McOptions options = {});
RiskEstimate occupancy_shortfall_prob(Model model, const CounterexampleConfig& cfg, McOptions options = {});

/// (Phi(-sqrt e), Phi(-sqrt e / sqrt(1 - 1/e))): the stated limits of
/// P(K_E < m) and P(K_F < m).
std::pair<double, double> asymptotic_limits();

}  // namespace poissonlab
