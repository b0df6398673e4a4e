#pragma once

#include <optional>
#include <string>
#include <vector>

#include "annealsim/ising.hpp"
#include "annealsim/qaoa.hpp"
#include "annealsim/schedule.hpp"
#include "annealsim/state_vector.hpp"

namespace annealsim {

/// combined: per-qubit exp(i tau/2 (hx sigma^x + hz sigma^z)), zz phase, per-qubit half step again.
/// split: the QAOA layer sequence with annealing-derived angles.
enum class AqaForm { kCombined, kSplit };

/// Where within step l the schedule is sampled.
///  kLeftEndpoint: combined form at s = l tau / t_anneal; split form on the grid s_k = k/n.
///  kMidpoint: both forms at s = (l + 1/2) tau / t_anneal; second order for time-dependent schedules.
enum class TimeSampling { kLeftEndpoint, kMidpoint };

std::string to_string(AqaForm form);
AqaForm parse_form(const std::string& text);
std::string to_string(TimeSampling sampling);
TimeSampling parse_sampling(const std::string& text);

struct AqaConfig {
  unsigned n = 50;   // steps are l = 0..n
  double tau = 0.4;  // time step
  AnnealingSchedule schedule = AnnealingSchedule::default_schedule();
  AqaForm form = AqaForm::kCombined;
  TimeSampling sampling = TimeSampling::kLeftEndpoint;
  PhaseConvention convention{};
  bool record_observables = false;

  double t_anneal() const { return anneal_time(n, tau); }
};

struct TrajectorySample {
  unsigned step = 0;
  double s = 0.0;  // normalized time after the step, (l + 1)/(n + 1)
  std::vector<double> spin;
};

struct AqaResult {
  StateVector state;
  std::optional<double> success_probability;
  double energy = 0.0;
  /// n + 1 samples when recorded, one after each full step.
  std::vector<TrajectorySample> trajectory;
};

AqaResult aqa_run(const IsingProblem& problem, const AqaConfig& config);

/// Split-form parameters for a configuration (aqa_params or the midpoint grid).
VariationalParams split_params(const AqaConfig& config);

/// step,s,<sz_0>,...,<sz_{N-1}>
std::string trajectory_csv(const std::vector<TrajectorySample>& trajectory, unsigned num_qubits);

struct ReferenceOptions {
  unsigned max_doublings = 16;
  double tolerance = 1e-9;
};

struct ReferenceResult {
  StateVector state;
  unsigned steps = 0;
  double last_change = 0.0;
};

/// High-accuracy solution of the annealing TDSE over [0, t_anneal]: combined
/// form with midpoint sampling, starting at `refinement` steps and doubling
/// until the max-amplitude change drops below the tolerance.
ReferenceResult reference_evolve(const IsingProblem& problem, const AnnealingSchedule& schedule, double t_anneal,
                                 unsigned refinement = 64, const ReferenceOptions& options = {},
                                 const PhaseConvention& convention = {});

struct TrotterRow {
  double tau = 0.0;
  unsigned steps = 0;
  double error_combined = 0.0;
  double error_split = 0.0;
  double combined_vs_split = 0.0;
  /// error(previous tau) / error(this tau); empty on the first row.
  std::optional<double> ratio_combined;
  std::optional<double> ratio_split;
  std::optional<double> ratio_mutual;
};

struct TrotterTable {
  std::vector<TrotterRow> rows;
  unsigned reference_steps = 0;
  std::string to_csv() const;
};

/// Error of both forms against reference_evolve at matched t_anneal for each
/// tau (t_anneal / tau must be an integer).
TrotterTable trotter_order_check(const IsingProblem& problem, const AnnealingSchedule& schedule, double t_anneal,
                                 const std::vector<double>& taus, TimeSampling sampling = TimeSampling::kMidpoint,
                                 const PhaseConvention& convention = {});

struct ScalingPoint {
  unsigned num_qubits = 0;
  std::string instance;
  double success = 0.0;
};

struct ExponentialFit {
  double alpha = 0.0;      // P ~ 2^(intercept - alpha N)
  double intercept = 0.0;
  double residual = 0.0;   // RMS of log2 residuals
  std::size_t points = 0;
  std::vector<std::string> warnings;
  std::string to_json() const;
};

/// Least-squares line through (N, log2 P). Points with P <= 0 are skipped with a warning.
ExponentialFit fit_exponential_decay(const std::vector<ScalingPoint>& points);

struct ScalingStudy {
  std::vector<ScalingPoint> table;
  ExponentialFit fit;
  /// N,instance,success
  std::string to_csv() const;
};

struct LabeledProblem {
  std::string label;
  IsingProblem problem;
};

/// Runs aqa_run with the same configuration on every instance (fixed
/// parameters across sizes) and fits the decay exponent.
ScalingStudy scaling_study(const std::vector<LabeledProblem>& instances, const AqaConfig& config);

struct WorkComparison {
  std::size_t qaoa_calls = 0;
  std::size_t qaoa_layers = 0;
  std::size_t qaoa_work = 0;
  unsigned aqa_steps = 0;
  std::size_t aqa_work = 0;
  std::optional<double> qaoa_success;
  std::optional<double> aqa_success;
  double work_ratio = 0.0;  // qaoa_work / aqa_work
  std::string to_json() const;
};

/// AQA with n steps costs the same as one p = n + 1 circuit; QAOA costs m * p.
WorkComparison work_comparison(const AqaResult& aqa, unsigned n, const OptTrace& trace, std::size_t p);

}  // namespace annealsim
