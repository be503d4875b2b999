#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "poissonlab/gridfn.hpp"
#include "poissonlab/mc.hpp"

namespace poissonlab {

/// n i.i.d. observations from a density; points lie in [0,1).
struct IidSample {
  std::int64_t n = 0;
  std::vector<double> points;
};

/// A realization of a Poisson process on [0,1) with mean total count
/// `intensity_total`.
struct PoissonSample {
  double intensity_total = 0.0;
  std::vector<double> points;
};

struct BinCounts {
  std::size_t k = 0;
  std::vector<std::int64_t> counts;

  std::int64_t total() const noexcept;
};

enum class Model { iid, poisson };

std::string_view to_string(Model model) noexcept;
Model parse_model(std::string_view name);

/// Draws points from a nonnegative piecewise-constant intensity normalized to
/// a probability: a cell is chosen with probability proportional to its mass
/// (Walker/Vose alias table), then the point is uniform within that cell.
class CellSampler {
 public:
  explicit CellSampler(const GridFunction& intensity);

  /// Integral of the intensity over [0,1).
  double total_mass() const noexcept { return total_mass_; }
  std::size_t resolution() const noexcept { return prob_.size(); }

  std::size_t draw_cell(Rng& rng) const noexcept {
    const std::uint32_t i = rng.below(static_cast<std::uint32_t>(prob_.size()));
    return rng.uniform() < prob_[i] ? i : alias_[i];
  }

  double draw_point(Rng& rng) const noexcept;

 private:
  double total_mass_ = 0.0;
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

/// Poisson variate: inversion for mean <= 30, Hormann's PTRS transformed
/// rejection above.
std::int64_t sample_poisson(double mean, Rng& rng);

IidSample sample_iid(const Density& f, std::int64_t n, Rng& rng);
IidSample sample_iid(const CellSampler& sampler, std::int64_t n, Rng& rng);

/// N ~ Poisson(n * int f), then N i.i.d. points from f / int f. The intensity
/// need not be normalized (superposition building blocks).
PoissonSample sample_poisson_process(const GridFunction& intensity, double n, Rng& rng);
PoissonSample sample_poisson_process(const CellSampler& sampler, double n, Rng& rng);

BinCounts bin_counts(std::span<const double> points, std::size_t k);

/// Number of strictly positive counts.
std::int64_t occupancy(const BinCounts& bc) noexcept;

/// Merged point set of two independent processes; intensities add.
PoissonSample superpose(const PoissonSample& a, const PoissonSample& b);

struct OccupancyMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Mean and variance of the number of occupied cells when balls fall
/// uniformly into `cells` equiprobable cells: `n` balls (iid) or
/// Poisson(n) balls (poisson).
OccupancyMoments occupancy_moments_exact(double n, std::int64_t cells, Model model);

/// Work budget n * cells for the exact iid occupancy dynamic program.
inline constexpr double kOccupancyDpBudget = 1e8;

/// Exact law of the occupied count after n uniform balls in `cells` cells,
/// by the ball-by-ball recursion K -> K + 1 with probability (cells - K)/cells.
/// Entry K of the result is P(occupied = K). Throws BudgetError when
/// n * cells exceeds the budget.
std::vector<double> occupancy_pmf_iid(std::int64_t n, std::int64_t cells);

/// P(K <= j).
double occupancy_cdf_exact(double n, std::int64_t cells, std::int64_t j, Model model);

/// Occupied count after throwing `balls` uniform balls into `cells` cells,
/// without materializing coordinates. `mask` is scratch space reused across
/// calls.
std::int64_t simulate_occupancy(std::int64_t balls, std::uint32_t cells, Rng& rng,
                                std::vector<std::uint64_t>& mask);

}  // namespace poissonlab
