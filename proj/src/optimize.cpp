#include "annealsim/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace annealsim {

double BudgetedObjective::operator()(std::span<const double> x) {
  if (exhausted()) throw std::logic_error("objective called beyond its budget");
  ++calls_;
  return f_(x);
}

namespace {

void check_start(std::span<const double> x0) {
  if (x0.empty()) throw std::invalid_argument("optimizer needs at least one parameter");
  for (double v : x0) {
    if (!std::isfinite(v)) throw std::invalid_argument("optimizer start point must be finite");
  }
}

struct Tracker {
  std::vector<double> best_x;
  double best = std::numeric_limits<double>::infinity();

  double observe(std::span<const double> x, double value) {
    if (value < best) {
      best = value;
      best_x.assign(x.begin(), x.end());
    }
    return value;
  }
};

}  // namespace

OptimizerResult nelder_mead(BudgetedObjective& objective, std::span<const double> x0,
                            const NelderMeadOptions& options) {
  check_start(x0);
  const std::size_t n = x0.size();
  Tracker tracker;
  auto eval = [&](const std::vector<double>& x) { return tracker.observe(x, objective(x)); };

  std::vector<std::vector<double>> simplex;
  std::vector<double> values;
  OptimizerResult result;

  auto finish = [&](bool converged) {
    result.best_x = tracker.best_x;
    result.best_value = tracker.best;
    result.calls = objective.calls();
    result.converged = converged;
    return result;
  };

  simplex.emplace_back(x0.begin(), x0.end());
  if (objective.exhausted()) return finish(false);
  values.push_back(eval(simplex[0]));
  for (std::size_t i = 0; i < n; ++i) {
    if (objective.exhausted()) return finish(false);
    std::vector<double> vertex(x0.begin(), x0.end());
    vertex[i] = vertex[i] != 0.0 ? vertex[i] * 1.05 : 0.00025;
    values.push_back(eval(vertex));
    simplex.push_back(std::move(vertex));
  }

  std::vector<std::size_t> order(n + 1);
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    {
      std::vector<std::vector<double>> s2;
      std::vector<double> v2;
      for (std::size_t k : order) {
        s2.push_back(simplex[k]);
        v2.push_back(values[k]);
      }
      simplex.swap(s2);
      values.swap(v2);
    }

    double x_spread = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t i = 0; i < n; ++i) x_spread = std::max(x_spread, std::abs(simplex[k][i] - simplex[0][i]));
    }
    const double f_spread = values[n] - values[0];
    if (x_spread <= options.x_tolerance && f_spread <= options.f_tolerance) return finish(true);
    if (objective.exhausted()) return finish(false);

    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k][i] / static_cast<double>(n);
    }
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = centroid[i] + t * (simplex[n][i] - centroid[i]);
      return x;
    };

    const auto reflected = along(-options.reflection);
    const double f_reflected = eval(reflected);
    if (f_reflected < values[0]) {
      if (objective.exhausted()) {
        simplex[n] = reflected;
        values[n] = f_reflected;
        continue;
      }
      const auto expanded = along(-options.reflection * options.expansion);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        simplex[n] = expanded;
        values[n] = f_expanded;
      } else {
        simplex[n] = reflected;
        values[n] = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[n - 1]) {
      simplex[n] = reflected;
      values[n] = f_reflected;
      continue;
    }
    if (objective.exhausted()) continue;
    const bool outside = f_reflected < values[n];
    const auto contracted = along(outside ? -options.reflection * options.contraction : options.contraction);
    const double f_contracted = eval(contracted);
    if (f_contracted < (outside ? f_reflected : values[n])) {
      simplex[n] = contracted;
      values[n] = f_contracted;
      continue;
    }
    for (std::size_t k = 1; k <= n; ++k) {
      if (objective.exhausted()) break;
      for (std::size_t i = 0; i < n; ++i) simplex[k][i] = simplex[0][i] + options.shrink * (simplex[k][i] - simplex[0][i]);
      values[k] = eval(simplex[k]);
    }
  }
}

OptimizerResult fd_conjugate_gradient(BudgetedObjective& objective, std::span<const double> x0,
                                      const ConjugateGradientOptions& options) {
  check_start(x0);
  const std::size_t n = x0.size();
  const double h = options.fd_step;
  Tracker tracker;
  auto eval = [&](const std::vector<double>& x) { return tracker.observe(x, objective(x)); };

  OptimizerResult result;
  auto finish = [&](bool converged) {
    result.best_x = tracker.best_x.empty() ? std::vector<double>(x0.begin(), x0.end()) : tracker.best_x;
    result.best_value = tracker.best;
    result.calls = objective.calls();
    result.converged = converged;
    return result;
  };

  auto gradient = [&](const std::vector<double>& x, std::vector<double>& g) {
    if (objective.remaining() < 2 * n) return false;
    std::vector<double> probe = x;
    for (std::size_t i = 0; i < n; ++i) {
      probe[i] = x[i] + h;
      const double plus = eval(probe);
      probe[i] = x[i] - h;
      const double minus = eval(probe);
      probe[i] = x[i];
      g[i] = (plus - minus) / (2 * h);
    }
    return true;
  };
  auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
  };
  // Too few calls left for a full gradient: spend them walking along the last
  // direction, doubling on success and reversing with a halved step otherwise.
  auto spend_remaining = [&](std::vector<double> x, double fx, const std::vector<double>& d, double alpha) {
    std::vector<double> trial(n);
    while (!objective.exhausted()) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] + alpha * d[i];
      const double f = eval(trial);
      if (f < fx) {
        x = trial;
        fx = f;
        alpha *= 2;
      } else {
        alpha *= -0.5;
      }
    }
    return finish(false);
  };

  if (objective.exhausted()) return finish(false);
  std::vector<double> x(x0.begin(), x0.end());
  double fx = eval(x);
  std::vector<double> g(n), g_new(n), d(n);
  if (!gradient(x, g)) {
    std::vector<double> axis(n, 0.0);
    axis[0] = 1.0;
    return spend_remaining(x, fx, axis, h);
  }
  for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
  double step = 1.0 / std::max(1.0, std::sqrt(dot(g, g)));

  while (true) {
    if (std::sqrt(dot(g, g)) <= options.gradient_tolerance) return finish(true);
    double slope = dot(g, d);
    if (slope >= 0) {
      for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
      slope = -dot(g, g);
    }

    // Backtracking with quadratic interpolation; Armijo constant 1e-4.
    double alpha = step;
    std::vector<double> trial(n);
    double f_trial = 0.0;
    bool accepted = false;
    for (int attempt = 0; attempt < 40; ++attempt) {
      if (objective.exhausted()) return finish(false);
      for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] + alpha * d[i];
      f_trial = eval(trial);
      // Minimizer of the parabola through f(0), f'(0) and f(alpha).
      const double curvature = f_trial - fx - slope * alpha;
      if (f_trial <= fx + 1e-4 * alpha * slope) {
        accepted = true;
        if (curvature > 0 && !objective.exhausted()) {
          const double alpha_q = -slope * alpha * alpha / (2 * curvature);
          if (alpha_q > 0 && std::abs(alpha_q - alpha) > 1e-3 * alpha) {
            std::vector<double> refined(n);
            for (std::size_t i = 0; i < n; ++i) refined[i] = x[i] + alpha_q * d[i];
            const double f_refined = eval(refined);
            if (f_refined < f_trial) {
              trial = refined;
              f_trial = f_refined;
              alpha = alpha_q;
            }
          }
        }
        break;
      }
      const double alpha_q = curvature > 0 ? -slope * alpha * alpha / (2 * curvature) : alpha / 2;
      alpha = std::clamp(alpha_q, 0.1 * alpha, 0.5 * alpha);
    }
    if (!accepted) return finish(true);

    const double decrease = fx - f_trial;
    x = trial;
    fx = f_trial;
    if (!gradient(x, g_new)) return spend_remaining(x, fx, d, alpha);
    const double denom = dot(g, g);
    double beta = 0.0;
    if (denom > 0) {
      double num = 0.0;
      for (std::size_t i = 0; i < n; ++i) num += g_new[i] * (g_new[i] - g[i]);
      beta = std::max(0.0, num / denom);
    }
    for (std::size_t i = 0; i < n; ++i) d[i] = -g_new[i] + beta * d[i];
    g.swap(g_new);
    step = std::max(alpha, 1e-12) * 2.0;
    if (decrease == 0.0 && std::sqrt(dot(g, g)) <= 1e3 * options.gradient_tolerance) return finish(true);
  }
}

}  // namespace annealsim
