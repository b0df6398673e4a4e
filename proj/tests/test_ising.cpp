#include <gtest/gtest.h>

#include "annealsim/ising.hpp"
#include "helpers.hpp"

using namespace annealsim;
using testing_support::random_problem;
using testing_support::to_oracle;

TEST(Ising, EnergyMatchesSpinSum) {
  for (unsigned n = 1; n <= 9; ++n) {
    const auto problem = random_problem(n, n);
    const auto o = to_oracle(problem);
    for (BasisLabel z = 0; z < dimension(n); ++z) EXPECT_NEAR(problem.energy(z), o.energy(z), 1e-12);
  }
}

TEST(Ising, DuplicateCouplersMergeAndSort) {
  const IsingProblem p(3, {0, 0, 0}, {{2, 1, 0.5}, {0, 2, 1.0}, {1, 2, 0.25}});
  ASSERT_EQ(p.couplers().size(), 2U);
  EXPECT_EQ(p.couplers()[0], (Coupler{0, 2, 1.0}));
  EXPECT_EQ(p.couplers()[1], (Coupler{1, 2, 0.75}));
  EXPECT_EQ(p.coupling(2, 1), 0.75);
  EXPECT_EQ(p.coupling(0, 1), 0.0);
}

TEST(Ising, Validation) {
  EXPECT_THROW(IsingProblem(2, {0.0}, {}), DomainError);
  EXPECT_THROW(IsingProblem(2, {0.0, 0.0}, {{0, 0, 1.0}}), IndexError);
  EXPECT_THROW(IsingProblem(2, {0.0, 0.0}, {{0, 2, 1.0}}), IndexError);
  EXPECT_THROW(IsingProblem(2, {0.0, 0.0}, {}, 0.0, BasisLabel{4}), IndexError);
}

TEST(Ising, FillEnergiesMatchesPointwise) {
  // Non-dyadic coefficients exercise the per-block restart.
  const auto problem = random_problem(14, 3);
  std::vector<double> out(dimension(14));
  fill_energies(problem, 0, out.size(), out.data());
  for (BasisLabel z = 0; z < out.size(); ++z) ASSERT_NEAR(out[z], problem.energy(z), 1e-11) << z;

  std::vector<double> window(100);
  fill_energies(problem, 5000, window.size(), window.data());
  for (std::size_t k = 0; k < window.size(); ++k) EXPECT_NEAR(window[k], problem.energy(5000 + k), 1e-11);
}

TEST(Ising, DiagonalEnergiesLookup) {
  const auto problem = random_problem(8, 4);
  const DiagonalEnergies energies(problem);
  EXPECT_TRUE(energies.materialized());
  std::vector<double> scratch;
  const double* r = energies.range(16, 32, scratch);
  for (std::size_t k = 0; k < 32; ++k) EXPECT_NEAR(r[k], problem.energy(16 + k), 1e-12);
  EXPECT_NEAR(energies.at(200), problem.energy(200), 1e-12);
}

TEST(Ising, CouplersOnlyDropsFields) {
  const auto problem = random_problem(5, 8);
  const auto zz = problem.couplers_only();
  for (double h : zz.fields()) EXPECT_EQ(h, 0.0);
  EXPECT_TRUE(std::equal(zz.couplers().begin(), zz.couplers().end(), problem.couplers().begin()));
}
