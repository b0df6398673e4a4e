#include <gtest/gtest.h>

#include <cmath>

#include "annealsim/optimize.hpp"

using namespace annealsim;

namespace {

double parabola(std::span<const double> x) { return (x[0] - 3) * (x[0] - 3); }

double rosenbrock(std::span<const double> x) {
  return (1 - x[0]) * (1 - x[0]) + 100 * (x[1] - x[0] * x[0]) * (x[1] - x[0] * x[0]);
}

}  // namespace

TEST(Optimize, NelderMeadFindsParabolaMinimum) {
  BudgetedObjective f(parabola, 200);
  const auto r = nelder_mead(f, std::vector<double>{0.0});
  EXPECT_NEAR(r.best_x[0], 3.0, 1e-6);
  EXPECT_LE(r.calls, 200U);
  EXPECT_EQ(r.calls, f.calls());
}

TEST(Optimize, ConjugateGradientFindsParabolaMinimum) {
  BudgetedObjective f(parabola, 200);
  const auto r = fd_conjugate_gradient(f, std::vector<double>{0.0});
  EXPECT_NEAR(r.best_x[0], 3.0, 1e-6);
  EXPECT_EQ(r.calls, f.calls());
}

TEST(Optimize, RosenbrockDescends) {
  const std::vector<double> x0{-1.2, 1.0};
  const double f0 = rosenbrock(x0);
  for (int method = 0; method < 2; ++method) {
    BudgetedObjective f(rosenbrock, 200);
    const auto r = method == 0 ? nelder_mead(f, x0) : fd_conjugate_gradient(f, x0);
    EXPECT_LT(r.best_value, f0);
    EXPECT_LE(f.calls(), 200U);
    EXPECT_EQ(r.calls, f.calls());
  }
}

TEST(Optimize, BudgetIsHard) {
  int calls = 0;
  BudgetedObjective f([&](std::span<const double> x) { ++calls; return rosenbrock(x); }, 7);
  const auto r = nelder_mead(f, std::vector<double>{-1.2, 1.0});
  EXPECT_EQ(calls, 7);
  EXPECT_EQ(r.calls, 7U);
  EXPECT_FALSE(r.converged);
  EXPECT_TRUE(f.exhausted());
  EXPECT_THROW(f(std::vector<double>{0.0, 0.0}), std::logic_error);

  BudgetedObjective g(rosenbrock, 5);
  fd_conjugate_gradient(g, std::vector<double>{-1.2, 1.0});
  EXPECT_EQ(g.calls(), 5U);
}

TEST(Optimize, RejectsBadStart) {
  BudgetedObjective f(parabola, 10);
  EXPECT_THROW(nelder_mead(f, std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(nelder_mead(f, std::vector<double>{NAN}), std::invalid_argument);
}
