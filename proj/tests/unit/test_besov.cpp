#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "poissonlab/besov.hpp"
#include "poissonlab/densities.hpp"
#include "poissonlab/errors.hpp"
#include "poissonlab/mc.hpp"

using namespace poissonlab;

namespace {

GridFunction halfstep(std::size_t k) { return builtin_density("halfstep", k).function(); }

}  // namespace

TEST(BesovParams, Validation) {
  EXPECT_THROW(BesovParams(0.0, 1, 1, 1), DomainError);
  EXPECT_THROW(BesovParams(0.5, 0.5, 1, 1), DomainError);
  EXPECT_THROW(BesovParams(0.5, 1, 0.9, 1), DomainError);
  EXPECT_THROW(BesovParams(0.5, 1, 1, 0), DomainError);
}

TEST(BesovNorm, Examples) {
  for (double alpha : {0.3, 1.0, 2.5}) {
    for (double p : {1.0, 2.0, 3.0}) {
      EXPECT_EQ(besov_norm(GridFunction::constant(64, 1.0), BesovParams(alpha, p, 2, 1)), 1.0);
      EXPECT_DOUBLE_EQ(besov_norm(halfstep(64), BesovParams(alpha, p, 1, 1)), 2.0);
    }
  }
  EXPECT_DOUBLE_EQ(besov_norm(halfstep(2), BesovParams(0.5, 1, 2, 1)), std::sqrt(2.0));
  EXPECT_THROW(besov_norm(GridFunction::constant(12, 1.0), BesovParams(0.5, 1, 1, 1)), ResolutionError);
}

TEST(BesovNorm, InBallBoundary) {
  EXPECT_TRUE(in_ball(GridFunction::constant(4, 1.0), BesovParams(0.5, 1, 1, 1)));
  EXPECT_FALSE(in_ball(halfstep(4), BesovParams(0.5, 1, 1, 1.5)));
  EXPECT_TRUE(in_ball(halfstep(4), BesovParams(0.5, 1, 1, 2)));
}

TEST(BesovNorm, MatchesDirectOracle) {
  Rng rng(10, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t K = std::size_t{1} << rng.below(11);
    const auto f = random_grid_function(rng, K);
    const double alpha = 0.1 + 2.0 * rng.uniform(), p = 1.0 + 2.0 * rng.uniform(), q = 1.0 + 3.0 * rng.uniform();
    const std::vector<double> v(f.values().begin(), f.values().end());
    const double want = oracle::besov_norm_direct(v, alpha, p, q);
    EXPECT_NEAR(besov_norm(f, BesovParams(alpha, p, q, 1)), want, 1e-10 * (1.0 + want));
  }
}

TEST(BesovNorm, HomogeneityMonotonicityTruncation) {
  Rng rng(11, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = random_grid_function(rng, 256);
    const BesovParams par(0.7, 1.5, 2, 1);
    const double n = besov_norm(f, par);
    for (double c : {-3.0, 0.0, 0.25, 7.0}) {
      EXPECT_NEAR(besov_norm(f.scaled(c), par), std::fabs(c) * n, 1e-12 * (1.0 + std::fabs(c) * n));
    }
    double prev = 0.0;
    for (double alpha : {0.1, 0.4, 0.9, 1.6}) {
      const double v = besov_norm(f, BesovParams(alpha, 1.5, 2, 1));
      EXPECT_GE(v, prev * (1 - 1e-14));
      prev = v;
    }
    // Refining adds ladder levels whose increments are identically zero.
    EXPECT_NEAR(besov_norm(refine(f, 4096), par), n, 1e-12 * n);
  }
}

TEST(Approximation, Examples) {
  EXPECT_EQ(approximation_lp_error(GridFunction::constant(32, 2.0), 4, 1.7), 0.0);
  EXPECT_DOUBLE_EQ(approximation_lp_error(halfstep(2), 1, 1), 1.0);
  EXPECT_EQ(approximation_lp_error(halfstep(64), 2, 1), 0.0);
  EXPECT_DOUBLE_EQ(approximation_bound_rhs(BesovParams(1, 1, 1, 1), 2, 1), 1.0);
  EXPECT_DOUBLE_EQ(approximation_bound_rhs(BesovParams(1, 1, 1, 1), 4, 1), 0.5);
  const BesovParams par(0.6, 2, 1, 3);
  EXPECT_DOUBLE_EQ(approximation_bound_rhs(par, 1, 2), std::pow(par.tail_constant(), 2.0));
}

TEST(Exceedance, Examples) {
  EXPECT_EQ(exceedance_measure(GridFunction::constant(8, 5.0), 2, 1e-9), 0.0);
  EXPECT_DOUBLE_EQ(exceedance_measure(halfstep(2), 1, 0.5), 1.0);
  EXPECT_EQ(exceedance_measure(halfstep(2), 1, 1.5), 0.0);
  EXPECT_THROW(exceedance_measure(halfstep(2), 1, 0.0), DomainError);
}

TEST(Condition15, Examples) {
  EXPECT_NEAR(condition15_rhs(BesovParams(1, 1, 1, 1), 8), 2.0 / 8.0 * std::sqrt(std::log(8.0)), 1e-15);
  EXPECT_NEAR(condition15_rhs(BesovParams(1, 1, 1, 1), 8), 0.3605, 5e-5);
  const BesovParams p1(0.8, 1.3, 1, 2.0), p2(0.8, 2.6, 1, 2.0);
  for (std::size_t k : {2u, 16u, 1024u}) {
    const double M1 = p1.tail_constant();
    const double want = std::pow(M1, 2.6) * std::pow(double(k), -2 * 0.8 * 1.3) * std::pow(std::log(double(k)), 1.3);
    EXPECT_NEAR(condition15_rhs(p2, k), want, 1e-12 * want);
    EXPECT_NEAR(condition15_rhs(p2, k), std::pow(condition15_rhs(p1, k), 2.0), 1e-12 * want);
  }
  const BesovParams par(0.5, 1, 1, 1);
  double prev = INFINITY;
  for (std::size_t k = 4; k <= (std::size_t{1} << 30); k *= 2) {
    const double v = condition15_rhs(par, k);
    EXPECT_LT(v, prev);
    prev = v;
  }
  EXPECT_LT(prev, 1e-3);
  EXPECT_THROW(condition15_rhs(par, 1), DomainError);
  EXPECT_DOUBLE_EQ(condition15_rhs(par, 8, 5.0), 5.0 / std::sqrt(8.0) * std::sqrt(std::log(8.0)));
}

TEST(Approximation, A5AndChebyshevChain) {
  Rng rng(12, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = random_grid_function(rng, 1024);
    for (double alpha : {0.3, 1.0}) {
      for (double p : {1.0, 2.0}) {
        const double Mf = besov_norm(f, BesovParams(alpha, p, 1, 1));
        const BesovParams at(alpha, p, 1, Mf);
        for (std::size_t k = 1; k <= 1024; k *= 2) {
          const double err = approximation_lp_error(f, k, p);
          EXPECT_LE(err, approximation_bound_rhs(at, k, p) * (1 + 1e-12));
          for (double t : {0.05, 0.3, 1.0}) {
            EXPECT_LE(exceedance_measure(f, k, t), err / std::pow(t, p) * (1 + 1e-12) + 1e-15);
          }
        }
      }
    }
  }
}
