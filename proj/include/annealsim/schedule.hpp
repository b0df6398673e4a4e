#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace annealsim {

enum class ScheduleUnits { kDimensionless, kGigahertz };

std::string to_string(ScheduleUnits units);
ScheduleUnits parse_units(const std::string& text);

struct ScheduleKnot {
  double s;
  double a;
  double b;
};

/// Piecewise-linear annealing functions A(s), B(s) on [0, 1].
class AnnealingSchedule {
 public:
  AnnealingSchedule(std::vector<ScheduleKnot> knots, ScheduleUnits units);

  /// (A(s), B(s)); exact at knots.
  std::pair<double, double> eval(double s) const;
  double a(double s) const { return eval(s).first; }
  double b(double s) const { return eval(s).second; }

  std::span<const ScheduleKnot> knots() const { return knots_; }
  ScheduleUnits units() const { return units_; }

  /// Approximate digitization of a D-Wave 2000Q annealing schedule, in GHz.
  /// Shape only; load the published tables via from_csv for exact values.
  static AnnealingSchedule default_schedule();
  /// A(s) = 1 - s, B(s) = s, dimensionless.
  static AnnealingSchedule linear();

  /// Header "s,A,B", one knot per row.
  static AnnealingSchedule from_csv(const std::filesystem::path& path, ScheduleUnits units);
  static AnnealingSchedule from_csv_text(const std::string& text, ScheduleUnits units);
  std::string to_csv() const;

 private:
  std::vector<ScheduleKnot> knots_;
  ScheduleUnits units_;
};

/// How schedule values become rotation angles.
struct PhaseConvention {
  /// GHz schedules with tau in ns use angle = 2 pi f tau when set; dimensionless
  /// schedules always use f tau.
  bool two_pi_for_ghz = true;

  double angular_factor(const AnnealingSchedule& schedule) const;
};

struct VariationalParams {
  std::vector<double> beta;
  std::vector<double> gamma;
  double tau = 0.0;

  std::size_t steps() const { return beta.size(); }

  /// [beta_1..beta_p, gamma_1..gamma_p]
  std::vector<double> flatten() const;
  static VariationalParams unflatten(std::span<const double> x, double tau = 0.0);

  friend bool operator==(const VariationalParams&, const VariationalParams&) = default;
};

/// Second-order product-formula parameters on an arbitrary grid s_1..s_p:
/// beta_k = -w tau (A(s_{k+1}) + A(s_k))/2 (k < p), beta_p = -w tau A(s_p)/2,
/// gamma_k = w tau B(s_k), with w from PhaseConvention.
VariationalParams params_on_grid(const AnnealingSchedule& schedule, std::span<const double> grid, double tau,
                                 const PhaseConvention& convention = {});

/// Grid s_k = (k-1)/(p-1); p = 1 uses s_1 = 0.
VariationalParams qaoa_init(const AnnealingSchedule& schedule, unsigned p, double tau,
                            const PhaseConvention& convention = {});

/// Grid s_k = k/n for k = 0..n, giving p = n + 1 layers.
VariationalParams aqa_params(const AnnealingSchedule& schedule, unsigned n, double tau,
                             const PhaseConvention& convention = {});

/// (n + 1) tau
inline double anneal_time(unsigned n, double tau) { return (n + 1) * tau; }

std::vector<double> qaoa_grid(unsigned p);
std::vector<double> aqa_grid(unsigned n);
/// s_l = (l + 1/2)/steps
std::vector<double> midpoint_grid(unsigned steps);

}  // namespace annealsim
