#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace poissonlab {

bool is_power_of_two(std::size_t k) noexcept;

/// Piecewise-constant function on the uniform partition of [0,1) into
/// `resolution()` cells. Cell j (0-based here) covers [j/k, (j+1)/k).
///
/// Any resolution >= 1 is accepted; operations that rely on the dyadic
/// ladder (Besov norms) check `is_dyadic()` themselves.
class GridFunction {
 public:
  explicit GridFunction(std::vector<double> values);
  GridFunction(std::initializer_list<double> values);

  static GridFunction constant(std::size_t resolution, double value);

  std::size_t resolution() const noexcept { return values_.size(); }
  bool is_dyadic() const noexcept { return is_power_of_two(values_.size()); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t cell) const { return values_[cell]; }

  bool nonnegative() const noexcept;
  double min_value() const noexcept;
  double max_value() const noexcept;

  /// Cellwise map; the result must stay finite.
  GridFunction map(const std::function<double(double)>& fn) const;
  GridFunction scaled(double factor) const;

  friend bool operator==(const GridFunction&, const GridFunction&) = default;

 private:
  std::vector<double> values_;
};

/// Nonnegative GridFunction with unit integral.
class Density {
 public:
  static constexpr double kNormTolerance = 1e-9;
  static constexpr double kRenormalizeTolerance = 1e-6;

  /// Renormalizes when |integral - 1| <= 1e-6, rejects otherwise.
  explicit Density(GridFunction f);
  explicit Density(std::vector<double> values) : Density(GridFunction(std::move(values))) {}
  Density(std::initializer_list<double> values) : Density(GridFunction(values)) {}

  const GridFunction& function() const noexcept { return f_; }
  std::size_t resolution() const noexcept { return f_.resolution(); }
  std::span<const double> values() const noexcept { return f_.values(); }
  operator const GridFunction&() const noexcept { return f_; }  // NOLINT

 private:
  GridFunction f_;
};

/// k' * integral of f over the j-th (1-based) of k' equal cells.
double average_operator(const GridFunction& f, std::size_t j, std::size_t kprime);

/// Piecewise-constant approximation at resolution kprime (cellwise averages).
GridFunction coarsen(const GridFunction& f, std::size_t kprime);

/// Value-replicating embedding into a finer partition.
GridFunction refine(const GridFunction& f, std::size_t kfine);

using PointwiseMap = std::function<double(std::span<const double>)>;

/// Exact integral over [0,1) of phi(f_1(x), ..., f_r(x)).
///
/// Inputs may live on different partitions; the integral is taken over the
/// merged breakpoint set, which is exact for piecewise-constant inputs. When
/// every resolution divides the largest one, the result is (1/K) * sum over
/// the K finest cells.
double integrate_map(std::span<const GridFunction* const> fs, const PointwiseMap& phi);

double integrate(const GridFunction& f);
double integrate(const GridFunction& f, const std::function<double(double)>& phi);
double integrate(const GridFunction& f, const GridFunction& g,
                 const std::function<double(double, double)>& phi);

/// Text format: a `resolution=<k>` line followed by k whitespace-separated values.
GridFunction read_grid_function(std::istream& in);
GridFunction load_grid_function(const std::string& path);
void write_grid_function(std::ostream& out, const GridFunction& f);

}  // namespace poissonlab
