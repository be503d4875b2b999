#include "poissonlab/gridfn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "poissonlab/errors.hpp"
#include "poissonlab/summation.hpp"

namespace poissonlab {

bool is_power_of_two(std::size_t k) noexcept { return k != 0 && (k & (k - 1)) == 0; }

GridFunction::GridFunction(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw ResolutionError("GridFunction: resolution must be >= 1");
  }
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!std::isfinite(values_[j])) {
      throw DomainError("GridFunction: non-finite value in cell " + std::to_string(j + 1));
    }
  }
}

GridFunction::GridFunction(std::initializer_list<double> values)
    : GridFunction(std::vector<double>(values)) {}

GridFunction GridFunction::constant(std::size_t resolution, double value) {
  return GridFunction(std::vector<double>(resolution, value));
}

bool GridFunction::nonnegative() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; });
}

double GridFunction::min_value() const noexcept {
  return *std::min_element(values_.begin(), values_.end());
}

double GridFunction::max_value() const noexcept {
  return *std::max_element(values_.begin(), values_.end());
}

GridFunction GridFunction::map(const std::function<double(double)>& fn) const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), fn);
  return GridFunction(std::move(out));
}

GridFunction GridFunction::scaled(double factor) const {
  return map([factor](double v) { return factor * v; });
}

namespace {

double mean_of(std::span<const double> v) {
  CompensatedSum s;
  for (double x : v) s += x;
  return s.value() / static_cast<double>(v.size());
}

}  // namespace

Density::Density(GridFunction f) : f_(std::move(f)) {
  if (!f_.nonnegative()) {
    throw DomainError("Density: negative value");
  }
  const double mass = mean_of(f_.values());
  const double err = std::abs(mass - 1.0);
  if (err > kRenormalizeTolerance) {
    std::ostringstream msg;
    msg << "Density: integral " << std::setprecision(17) << mass << " is not 1";
    throw DomainError(msg.str());
  }
  if (err > 0.0) {
    f_ = f_.scaled(1.0 / mass);
  }
}

double average_operator(const GridFunction& f, std::size_t j, std::size_t kprime) {
  if (kprime == 0 || f.resolution() % kprime != 0) {
    throw ResolutionError("average_operator: " + std::to_string(kprime) +
                          " does not divide resolution " + std::to_string(f.resolution()));
  }
  if (j < 1 || j > kprime) {
    throw IndexError("average_operator: cell " + std::to_string(j) + " outside 1.." +
                     std::to_string(kprime));
  }
  const std::size_t width = f.resolution() / kprime;
  return mean_of(f.values().subspan((j - 1) * width, width));
}

GridFunction coarsen(const GridFunction& f, std::size_t kprime) {
  if (kprime == 0 || f.resolution() % kprime != 0) {
    throw ResolutionError("coarsen: " + std::to_string(kprime) + " does not divide resolution " +
                          std::to_string(f.resolution()));
  }
  if (kprime == f.resolution()) return f;
  const std::size_t width = f.resolution() / kprime;
  std::vector<double> out(kprime);
  for (std::size_t j = 0; j < kprime; ++j) {
    out[j] = mean_of(f.values().subspan(j * width, width));
  }
  return GridFunction(std::move(out));
}

GridFunction refine(const GridFunction& f, std::size_t kfine) {
  if (kfine == 0 || kfine % f.resolution() != 0) {
    throw ResolutionError("refine: " + std::to_string(kfine) + " is not a multiple of resolution " +
                          std::to_string(f.resolution()));
  }
  const std::size_t width = kfine / f.resolution();
  std::vector<double> out(kfine);
  for (std::size_t c = 0; c < kfine; ++c) out[c] = f[c / width];
  return GridFunction(std::move(out));
}

namespace {

[[noreturn]] void bad_value(std::size_t cell, double value) {
  std::ostringstream msg;
  msg << "integrate_map: integrand is " << value << " on common-grid cell " << cell + 1;
  throw EvaluationError(msg.str());
}

}  // namespace

double integrate_map(std::span<const GridFunction* const> fs, const PointwiseMap& phi) {
  if (fs.empty()) {
    throw std::invalid_argument("integrate_map: at least one function required");
  }
  const std::size_t r = fs.size();
  std::size_t finest = 0;
  for (const auto* f : fs) finest = std::max(finest, f->resolution());
  const bool nested = std::all_of(fs.begin(), fs.end(),
                                  [finest](const GridFunction* f) { return finest % f->resolution() == 0; });

  std::vector<double> args(r);
  CompensatedSum total;

  if (nested) {
    std::vector<std::size_t> stride(r);
    for (std::size_t i = 0; i < r; ++i) stride[i] = finest / fs[i]->resolution();
    for (std::size_t c = 0; c < finest; ++c) {
      for (std::size_t i = 0; i < r; ++i) args[i] = (*fs[i])[c / stride[i]];
      const double v = phi(args);
      if (!std::isfinite(v)) bad_value(c, v);
      total += v;
    }
    return total.value() / static_cast<double>(finest);
  }

  // Merge the breakpoint sets {j / k_i}. Breakpoints are compared exactly by
  // cross-multiplication; only the cell widths are rounded.
  std::vector<std::uint64_t> next(r, 1);
  std::uint64_t left_num = 0;
  std::uint64_t left_den = 1;
  std::size_t cell = 0;
  while (true) {
    std::size_t best = r;
    for (std::size_t i = 0; i < r; ++i) {
      const std::uint64_t k = fs[i]->resolution();
      if (next[i] > k) continue;
      if (best == r || next[i] * fs[best]->resolution() < next[best] * k) best = i;
    }
    if (best == r) break;
    const std::uint64_t num = next[best];
    const std::uint64_t den = fs[best]->resolution();
    for (std::size_t i = 0; i < r; ++i) args[i] = (*fs[i])[next[i] - 1];
    const double width = static_cast<double>(num) / static_cast<double>(den) -
                         static_cast<double>(left_num) / static_cast<double>(left_den);
    const double v = phi(args);
    if (!std::isfinite(v)) bad_value(cell, v);
    total += v * width;
    for (std::size_t i = 0; i < r; ++i) {
      const std::uint64_t k = fs[i]->resolution();
      if (next[i] <= k && next[i] * den == num * k) ++next[i];
    }
    left_num = num;
    left_den = den;
    ++cell;
  }
  return total.value();
}

double integrate(const GridFunction& f) { return mean_of(f.values()); }

double integrate(const GridFunction& f, const std::function<double(double)>& phi) {
  const GridFunction* fs[] = {&f};
  return integrate_map(fs, [&phi](std::span<const double> u) { return phi(u[0]); });
}

double integrate(const GridFunction& f, const GridFunction& g,
                 const std::function<double(double, double)>& phi) {
  const GridFunction* fs[] = {&f, &g};
  return integrate_map(fs, [&phi](std::span<const double> u) { return phi(u[0], u[1]); });
}

GridFunction read_grid_function(std::istream& in) {
  std::string header;
  if (!(in >> header) || header.rfind("resolution=", 0) != 0) {
    throw std::invalid_argument("grid function file: expected 'resolution=<k>' header");
  }
  std::size_t k = 0;
  try {
    std::size_t pos = 0;
    const auto parsed = std::stoull(header.substr(11), &pos);
    if (pos != header.size() - 11) throw std::invalid_argument("trailing characters");
    k = static_cast<std::size_t>(parsed);
  } catch (const std::exception&) {
    throw std::invalid_argument("grid function file: bad resolution in '" + header + "'");
  }
  if (k == 0) throw ResolutionError("grid function file: resolution must be >= 1");
  std::vector<double> values;
  values.reserve(k);
  std::string token;
  while (in >> token) {
    try {
      std::size_t pos = 0;
      values.push_back(std::stod(token, &pos));
      if (pos != token.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw std::invalid_argument("grid function file: bad value '" + token + "'");
    }
  }
  if (values.size() != k) {
    throw ResolutionError("grid function file: expected " + std::to_string(k) + " values, got " +
                          std::to_string(values.size()));
  }
  return GridFunction(std::move(values));
}

GridFunction load_grid_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open grid function file '" + path + "'");
  return read_grid_function(in);
}

void write_grid_function(std::ostream& out, const GridFunction& f) {
  out << "resolution=" << f.resolution() << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t j = 0; j < f.resolution(); ++j) {
    out << f[j] << (j + 1 == f.resolution() ? '\n' : ' ');
  }
}

}  // namespace poissonlab
