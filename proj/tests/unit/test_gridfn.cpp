#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "poissonlab/densities.hpp"
#include "poissonlab/errors.hpp"
#include "poissonlab/gridfn.hpp"
#include "poissonlab/mc.hpp"

using namespace poissonlab;

namespace {

GridFunction halfstep(std::size_t k) {
  std::vector<double> v(k, 0.0);
  for (std::size_t i = 0; i < k / 2; ++i) v[i] = 2.0;
  return GridFunction(v);
}

std::vector<double> to_vec(const GridFunction& f) { return {f.values().begin(), f.values().end()}; }

}  // namespace

TEST(GridFunction, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(GridFunction(std::vector<double>{}), ResolutionError);
  EXPECT_THROW(GridFunction({1.0, std::nan("")}), DomainError);
  EXPECT_THROW(GridFunction({1.0, INFINITY}), DomainError);
}

TEST(GridFunction, DyadicFlag) {
  EXPECT_TRUE(GridFunction::constant(8, 1.0).is_dyadic());
  EXPECT_FALSE(GridFunction::constant(6, 1.0).is_dyadic());
}

TEST(Density, NormalizationRules) {
  EXPECT_NO_THROW(Density({1.0, 1.0}));
  EXPECT_THROW(Density({1.0, -0.5, 1.5}), DomainError);
  EXPECT_THROW(Density({1.0, 1.1}), DomainError);
  const Density d({1.0 + 4e-7, 1.0 + 4e-7});
  EXPECT_NEAR(integrate(d), 1.0, 1e-15);
}

TEST(AverageOperator, Examples) {
  EXPECT_DOUBLE_EQ(average_operator(GridFunction::constant(16, 3.5), 3, 4), 3.5);
  EXPECT_DOUBLE_EQ(average_operator(halfstep(2), 1, 2), 2.0);
  Rng rng(1, 0);
  EXPECT_NEAR(average_operator(random_density(rng, 64), 1, 1), 1.0, 1e-12);
  EXPECT_THROW(average_operator(halfstep(4), 0, 2), IndexError);
  EXPECT_THROW(average_operator(halfstep(4), 3, 2), IndexError);
  EXPECT_THROW(average_operator(halfstep(4), 1, 3), ResolutionError);
}

TEST(Coarsen, Examples) {
  const auto f = halfstep(8);
  EXPECT_EQ(coarsen(f, 8), f);
  EXPECT_EQ(coarsen(halfstep(4), 1), GridFunction::constant(1, 1.0));
  Rng rng(2, 0);
  const auto g = random_grid_function(rng, 8);
  EXPECT_EQ(coarsen(coarsen(g, 4), 2), coarsen(g, 2));
}

TEST(Refine, Examples) {
  EXPECT_EQ(refine(GridFunction::constant(2, 0.7), 16), GridFunction::constant(16, 0.7));
  EXPECT_EQ(refine(GridFunction({1.0, 3.0}), 4), GridFunction({1.0, 1.0, 3.0, 3.0}));
  Rng rng(3, 0);
  const auto g = random_grid_function(rng, 8);
  EXPECT_EQ(coarsen(refine(g, 64), 8), g);
  EXPECT_THROW(refine(g, 12), ResolutionError);
}

TEST(IntegrateMap, Examples) {
  Rng rng(4, 0);
  EXPECT_NEAR(integrate(random_density(rng, 128)), 1.0, 1e-12);
  const auto one = GridFunction::constant(1, 1.0);
  EXPECT_DOUBLE_EQ(integrate(one, halfstep(2), [](double u, double v) { return (u - v) * (u - v); }), 1.0);
  EXPECT_DOUBLE_EQ(integrate(halfstep(2), [](double u) { return u * u; }), 2.0);
}

TEST(IntegrateMap, MatchesMidpointOracleOnMixedPartitions) {
  Rng rng(5, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t a = 1 + rng.below(40), b = 1 + rng.below(40), c = 1 + rng.below(12);
    const auto f = random_grid_function(rng, a);
    const auto g = random_grid_function(rng, b);
    const auto h = random_grid_function(rng, c);
    const GridFunction* fs[] = {&f, &g, &h};
    auto phi = [](std::span<const double> u) { return u[0] * u[1] - std::fabs(u[2]) + u[0] * u[0]; };
    const double got = integrate_map(fs, phi);
    const auto vf = to_vec(f), vg = to_vec(g), vh = to_vec(h);
    const double want = oracle::midpoint_integral({&vf, &vg, &vh}, a * b * c,
                                                  [](const std::vector<double>& u) {
                                                    return u[0] * u[1] - std::fabs(u[2]) + u[0] * u[0];
                                                  });
    EXPECT_NEAR(got, want, 1e-10 * (1.0 + std::fabs(want))) << a << " " << b << " " << c;
  }
}

TEST(IntegrateMap, ReportsNonFiniteIntegrandCell) {
  const GridFunction f({1.0, 0.0, 1.0});
  try {
    integrate(f, [](double u) { return 1.0 / u; });
    FAIL();
  } catch (const EvaluationError& e) {
    EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
  }
}

TEST(GridProperties, IntegralPreservationTowerAndRefinementInvariance) {
  Rng rng(6, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t K = std::size_t{1} << (1 + rng.below(10));
    const auto f = random_grid_function(rng, K);
    const double base = integrate(f);
    for (std::size_t k = 1; k <= K; k *= 2) {
      EXPECT_NEAR(integrate(coarsen(f, k)), base, 1e-12 * (1.0 + std::fabs(base)));
      for (std::size_t k2 = 1; k2 <= k; k2 *= 2) {
        const auto two = coarsen(coarsen(f, k), k2), one = coarsen(f, k2);
        for (std::size_t j = 0; j < k2; ++j) EXPECT_NEAR(two[j], one[j], 1e-12 * (1.0 + std::fabs(one[j])));
      }
    }
    auto sq = [](double u) { return u * u; };
    EXPECT_NEAR(integrate(refine(f, 4 * K), sq), integrate(f, sq), 1e-12 * (1.0 + integrate(f, sq)));
    const double lin = integrate(f, [](double u) { return 2.0 * u + u * u; });
    EXPECT_NEAR(lin, 2.0 * base + integrate(f, sq), 1e-12 * (1.0 + std::fabs(lin)));
  }
}

TEST(GridIo, RoundTripAndFormatErrors) {
  const GridFunction f({0.1, 2.5, 1e-17, 3.0});
  std::stringstream ss;
  write_grid_function(ss, f);
  EXPECT_EQ(read_grid_function(ss), f);
  std::istringstream bad("resolution=3\n1 2\n");
  EXPECT_ANY_THROW(read_grid_function(bad));
  std::istringstream nohdr("1 2 3\n");
  EXPECT_ANY_THROW(read_grid_function(nohdr));
}
