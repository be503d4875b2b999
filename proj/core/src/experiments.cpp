#include "poissonlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "poissonlab/distributions.hpp"
#include "poissonlab/errors.hpp"
#include "poissonlab/summation.hpp"

namespace poissonlab {

std::int64_t BinCounts::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

std::string_view to_string(Model model) noexcept { return model == Model::iid ? "iid" : "poisson"; }

Model parse_model(std::string_view name) {
  if (name == "iid") return Model::iid;
  if (name == "poisson") return Model::poisson;
  throw std::invalid_argument("unknown model '" + std::string(name) + "' (expected iid|poisson)");
}

CellSampler::CellSampler(const GridFunction& intensity) {
  if (!intensity.nonnegative()) throw DomainError("CellSampler: negative intensity");
  const std::size_t k = intensity.resolution();
  if (k >= std::numeric_limits<std::uint32_t>::max()) throw ResolutionError("CellSampler: too many cells");
  total_mass_ = integrate(intensity);
  if (!(total_mass_ > 0.0)) throw DomainError("CellSampler: intensity has zero mass");

  // Vose's alias method on the normalized cell probabilities scaled by k.
  std::vector<double> scaled(k);
  for (std::size_t j = 0; j < k; ++j) scaled[j] = intensity[j] / total_mass_;
  prob_.assign(k, 1.0);
  alias_.resize(k);
  std::iota(alias_.begin(), alias_.end(), 0u);
  std::vector<std::uint32_t> small;
  std::vector<std::uint32_t> large;
  for (std::uint32_t j = 0; j < k; ++j) (scaled[j] < 1.0 ? small : large).push_back(j);
  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back();
    small.pop_back();
    const std::uint32_t l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers differ from 1 only by rounding.
  for (auto j : small) prob_[j] = 1.0;
  for (auto j : large) prob_[j] = 1.0;
}

double CellSampler::draw_point(Rng& rng) const noexcept {
  const double k = static_cast<double>(prob_.size());
  const double x = (static_cast<double>(draw_cell(rng)) + rng.uniform()) / k;
  return x < 1.0 ? x : std::nextafter(1.0, 0.0);
}

std::int64_t sample_poisson(double mean, Rng& rng) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw DomainError("sample_poisson: mean must be >= 0");
  if (mean == 0.0) return 0;
  if (mean <= 30.0) {
    const double u = rng.uniform();
    double p = std::exp(-mean);
    double cdf = p;
    std::int64_t k = 0;
    while (u >= cdf && k < 1000) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  while (true) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::abs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::int64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        -mean + kf * loglam - std::lgamma(kf + 1.0)) {
      return static_cast<std::int64_t>(kf);
    }
  }
}

IidSample sample_iid(const CellSampler& sampler, std::int64_t n, Rng& rng) {
  if (n < 0) throw DomainError("sample_iid: n must be >= 0");
  IidSample s;
  s.n = n;
  s.points.resize(static_cast<std::size_t>(n));
  for (auto& x : s.points) x = sampler.draw_point(rng);
  return s;
}

IidSample sample_iid(const Density& f, std::int64_t n, Rng& rng) {
  return sample_iid(CellSampler(f.function()), n, rng);
}

PoissonSample sample_poisson_process(const CellSampler& sampler, double n, Rng& rng) {
  if (!(n > 0.0)) throw DomainError("sample_poisson_process: scale n must be positive");
  PoissonSample s;
  s.intensity_total = n * sampler.total_mass();
  const std::int64_t count = sample_poisson(s.intensity_total, rng);
  s.points.resize(static_cast<std::size_t>(count));
  for (auto& x : s.points) x = sampler.draw_point(rng);
  return s;
}

PoissonSample sample_poisson_process(const GridFunction& intensity, double n, Rng& rng) {
  return sample_poisson_process(CellSampler(intensity), n, rng);
}

BinCounts bin_counts(std::span<const double> points, std::size_t k) {
  if (k < 1) throw DomainError("bin_counts: k must be >= 1");
  BinCounts bc{k, std::vector<std::int64_t>(k, 0)};
  const double kk = static_cast<double>(k);
  for (double x : points) {
    if (!(x >= 0.0 && x < 1.0)) throw DomainError("bin_counts: point outside [0,1)");
    const auto j = std::min(static_cast<std::size_t>(x * kk), k - 1);
    ++bc.counts[j];
  }
  return bc;
}

std::int64_t occupancy(const BinCounts& bc) noexcept {
  return std::count_if(bc.counts.begin(), bc.counts.end(), [](std::int64_t c) { return c > 0; });
}

PoissonSample superpose(const PoissonSample& a, const PoissonSample& b) {
  PoissonSample out;
  out.intensity_total = a.intensity_total + b.intensity_total;
  out.points.reserve(a.points.size() + b.points.size());
  out.points.insert(out.points.end(), a.points.begin(), a.points.end());
  out.points.insert(out.points.end(), b.points.begin(), b.points.end());
  return out;
}

namespace {

// (1 - x)^n for 0 <= x <= 1, accurate for small x.
double pow_one_minus(double x, double n) {
  if (n == 0.0) return 1.0;
  if (x >= 1.0) return 0.0;
  return std::exp(n * std::log1p(-x));
}

}  // namespace

OccupancyMoments occupancy_moments_exact(double n, std::int64_t cells, Model model) {
  if (cells < 1) throw DomainError("occupancy_moments_exact: cells must be >= 1");
  if (!(n >= 0.0)) throw DomainError("occupancy_moments_exact: n must be >= 0");
  const double k = static_cast<double>(cells);
  if (model == Model::poisson) {
    const double p = -std::expm1(-n / k);
    return {k * p, k * p * (1.0 - p)};
  }
  if (n != std::floor(n)) throw DomainError("occupancy_moments_exact: iid model needs integer n");
  const double empty1 = pow_one_minus(1.0 / k, n);
  const double empty2 = pow_one_minus(2.0 / k, n);
  const double empty1_sq = pow_one_minus(1.0 / k, 2.0 * n);
  const double variance = k * empty1 * (1.0 - empty1) + k * (k - 1.0) * (empty2 - empty1_sq);
  return {k * (1.0 - empty1), std::max(0.0, variance)};
}

std::vector<double> occupancy_pmf_iid(std::int64_t n, std::int64_t cells) {
  if (n < 0 || cells < 1) throw DomainError("occupancy_pmf_iid: need n >= 0 and cells >= 1");
  if (static_cast<double>(n) * static_cast<double>(cells) > kOccupancyDpBudget) {
    throw BudgetError("occupancy_pmf_iid: n * cells = " +
                      std::to_string(static_cast<double>(n) * static_cast<double>(cells)) +
                      " exceeds the exact budget; use Monte Carlo");
  }
  const std::int64_t top = std::min(n, cells);
  std::vector<double> p(static_cast<std::size_t>(top) + 1, 0.0);
  p[0] = 1.0;
  const double k = static_cast<double>(cells);
  for (std::int64_t t = 1; t <= n; ++t) {
    const std::int64_t hi = std::min(t, top);
    for (std::int64_t K = hi; K >= 1; --K) {
      const auto i = static_cast<std::size_t>(K);
      p[i] = p[i] * (static_cast<double>(K) / k) + p[i - 1] * ((k - static_cast<double>(K - 1)) / k);
    }
    p[0] = 0.0;
  }
  return p;
}

double occupancy_cdf_exact(double n, std::int64_t cells, std::int64_t j, Model model) {
  if (cells < 1) throw DomainError("occupancy_cdf_exact: cells must be >= 1");
  if (j < 0) return 0.0;
  if (model == Model::poisson) {
    if (!(n >= 0.0)) throw DomainError("occupancy_cdf_exact: n must be >= 0");
    return binomial_cdf(j, cells, -std::expm1(-n / static_cast<double>(cells)));
  }
  if (n != std::floor(n) || n < 0.0) throw DomainError("occupancy_cdf_exact: iid model needs integer n >= 0");
  const auto balls = static_cast<std::int64_t>(n);
  if (j >= std::min(balls, cells)) return 1.0;
  const auto pmf = occupancy_pmf_iid(balls, cells);
  CompensatedSum s;
  for (std::int64_t K = 0; K <= j; ++K) s += pmf[static_cast<std::size_t>(K)];
  return std::min(1.0, s.value());
}

std::int64_t simulate_occupancy(std::int64_t balls, std::uint32_t cells, Rng& rng,
                                std::vector<std::uint64_t>& mask) {
  const std::size_t words = (static_cast<std::size_t>(cells) + 63) / 64;
  mask.assign(words, 0);
  std::int64_t occupied = 0;
  for (std::int64_t b = 0; b < balls; ++b) {
    const std::uint32_t c = rng.below(cells);
    std::uint64_t& word = mask[c >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (c & 63);
    occupied += (word & bit) == 0;
    word |= bit;
  }
  return occupied;
}

}  // namespace poissonlab
