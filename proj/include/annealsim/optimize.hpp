#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace annealsim {

using Objective = std::function<double(std::span<const double>)>;

/// Wraps an objective with a hard call budget. Optimizers must check
/// `exhausted()` before calling; every call is charged, including
/// finite-difference probes.
class BudgetedObjective {
 public:
  BudgetedObjective(Objective f, std::size_t budget) : f_(std::move(f)), budget_(budget) {}

  double operator()(std::span<const double> x);
  bool exhausted() const { return calls_ >= budget_; }
  std::size_t remaining() const { return budget_ - calls_; }
  std::size_t calls() const { return calls_; }

 private:
  Objective f_;
  std::size_t budget_;
  std::size_t calls_ = 0;
};

struct OptimizerResult {
  std::vector<double> best_x;
  double best_value = 0.0;
  std::size_t calls = 0;
  /// true if the optimizer's own convergence test fired before the budget ran out.
  bool converged = false;
};

struct NelderMeadOptions {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  double x_tolerance = 1e-8;
  double f_tolerance = 1e-12;
};

/// Downhill simplex. Initial simplex perturbs each coordinate by 5% (0.00025 for zeros).
OptimizerResult nelder_mead(BudgetedObjective& objective, std::span<const double> x0,
                            const NelderMeadOptions& options = {});

struct ConjugateGradientOptions {
  /// Central-difference step.
  double fd_step = 1e-4;
  double gradient_tolerance = 1e-8;
};

/// Polak-Ribiere+ nonlinear conjugate gradient with central-difference
/// gradients and a backtracking line search seeded by quadratic interpolation.
OptimizerResult fd_conjugate_gradient(BudgetedObjective& objective, std::span<const double> x0,
                                      const ConjugateGradientOptions& options = {});

}  // namespace annealsim
