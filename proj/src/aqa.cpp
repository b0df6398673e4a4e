#include "annealsim/aqa.hpp"

#include <cmath>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "annealsim/output.hpp"

namespace annealsim {

std::string to_string(AqaForm form) { return form == AqaForm::kCombined ? "combined" : "split"; }

AqaForm parse_form(const std::string& text) {
  if (text == "combined") return AqaForm::kCombined;
  if (text == "split") return AqaForm::kSplit;
  throw DomainError("unknown AQA form '" + text + "' (expected combined or split)");
}

std::string to_string(TimeSampling sampling) {
  return sampling == TimeSampling::kLeftEndpoint ? "left" : "midpoint";
}

TimeSampling parse_sampling(const std::string& text) {
  if (text == "left") return TimeSampling::kLeftEndpoint;
  if (text == "midpoint") return TimeSampling::kMidpoint;
  throw DomainError("unknown time sampling '" + text + "' (expected left or midpoint)");
}

namespace {

// Schedule sample points for `steps` combined-form steps.
std::vector<double> combined_grid(unsigned steps, TimeSampling sampling) {
  if (sampling == TimeSampling::kMidpoint) return midpoint_grid(steps);
  std::vector<double> grid(steps);
  for (unsigned l = 0; l < steps; ++l) grid[l] = static_cast<double>(l) / static_cast<double>(steps);
  return grid;
}

using Observer = std::function<void(unsigned step, const StateVector&)>;

// Second-order step
//   exp(i tau/2 sum_i (A sigma^x_i - B h_i sigma^z_i)) exp(-i tau B sum J sigma^z sigma^z) exp(same half step)
// with adjacent single-qubit half steps fused into one 2x2 gate per qubit.
StateVector evolve_combined(const IsingProblem& problem, const DiagonalEnergies& zz, const AnnealingSchedule& schedule,
                            const std::vector<double>& grid, double tau, double angular, const Observer& observe) {
  const unsigned n = problem.num_qubits();
  const auto h = problem.fields();
  StateVector state = StateVector::plus_state(n);
  auto half_step = [&](double s, unsigned q) {
    const auto [a, b] = schedule.eval(s);
    const double x = angular * tau / 2 * a;
    const double z = -angular * tau / 2 * b * h[q];
    return SingleQubitGate::xz_exponential(x, z);
  };
  std::vector<SingleQubitGate> pending(n);
  for (unsigned q = 0; q < n; ++q) pending[q] = half_step(grid.front(), q);
  for (std::size_t l = 0; l < grid.size(); ++l) {
    for (unsigned q = 0; q < n; ++q) state.apply_single_qubit(q, pending[q]);
    const double b = schedule.b(grid[l]);
    state.apply_diagonal_phase(zz, angular * tau * b);
    const bool last = l + 1 == grid.size();
    if (observe || last) {
      for (unsigned q = 0; q < n; ++q) {
        state.apply_single_qubit(q, half_step(grid[l], q));
        if (!last) pending[q] = half_step(grid[l + 1], q);
      }
      if (observe) observe(static_cast<unsigned>(l), state);
    } else {
      for (unsigned q = 0; q < n; ++q) pending[q] = half_step(grid[l + 1], q) * half_step(grid[l], q);
    }
  }
  return state;
}

StateVector evolve_split(const QaoaCircuit& circuit, const VariationalParams& params, const Observer& observe) {
  StateVector state = StateVector::plus_state(circuit.problem().num_qubits());
  for (std::size_t k = 0; k < params.steps(); ++k) {
    state.apply_diagonal_phase(circuit.energies(), params.gamma[k]);
    apply_mixer(state, params.beta[k]);
    if (observe) observe(static_cast<unsigned>(k), state);
  }
  return state;
}

void check_config(const AqaConfig& config) {
  if (config.n < 1) throw DomainError("AQA needs n >= 1");
  if (!(config.tau > 0.0) || !std::isfinite(config.tau)) throw DomainError("AQA time step must be positive");
}

}  // namespace

VariationalParams split_params(const AqaConfig& config) {
  check_config(config);
  if (config.sampling == TimeSampling::kMidpoint) {
    return params_on_grid(config.schedule, midpoint_grid(config.n + 1), config.tau, config.convention);
  }
  return aqa_params(config.schedule, config.n, config.tau, config.convention);
}

AqaResult aqa_run(const IsingProblem& problem, const AqaConfig& config) {
  check_config(config);
  if (problem.num_qubits() > kMaxQubits) throw CapacityError("AQA problem exceeds the state-vector budget");
  const unsigned steps = config.n + 1;
  std::vector<TrajectorySample> trajectory;
  Observer observe;
  if (config.record_observables) {
    trajectory.reserve(steps);
    observe = [&](unsigned step, const StateVector& state) {
      trajectory.push_back({step, static_cast<double>(step + 1) / steps, state.spin_expectations()});
    };
  }

  const QaoaCircuit circuit(problem);
  StateVector final_state = [&] {
    if (config.form == AqaForm::kSplit) return evolve_split(circuit, split_params(config), observe);
    const DiagonalEnergies zz(problem.couplers_only());
    return evolve_combined(problem, zz, config.schedule, combined_grid(steps, config.sampling), config.tau,
                           config.convention.angular_factor(config.schedule), observe);
  }();

  const QaoaEvaluation obs = circuit.observe(final_state);
  return AqaResult{std::move(final_state), obs.success_probability, obs.energy, std::move(trajectory)};
}

std::string trajectory_csv(const std::vector<TrajectorySample>& trajectory, unsigned num_qubits) {
  std::string out = "step,s";
  for (unsigned q = 0; q < num_qubits; ++q) out += ",sz_" + std::to_string(q);
  out += '\n';
  for (const auto& sample : trajectory) {
    out += std::to_string(sample.step) + "," + format_double(sample.s);
    for (double v : sample.spin) out += "," + format_double(v);
    out += '\n';
  }
  return out;
}

ReferenceResult reference_evolve(const IsingProblem& problem, const AnnealingSchedule& schedule, double t_anneal,
                                 unsigned refinement, const ReferenceOptions& options,
                                 const PhaseConvention& convention) {
  if (problem.num_qubits() > 12) throw CapacityError("reference_evolve is limited to 12 qubits");
  if (refinement < 64) throw DomainError("reference_evolve needs refinement >= 64");
  if (!(t_anneal > 0.0)) throw DomainError("annealing time must be positive");
  const DiagonalEnergies zz(problem.couplers_only());
  const double angular = convention.angular_factor(schedule);
  auto run = [&](unsigned steps) {
    return evolve_combined(problem, zz, schedule, midpoint_grid(steps), t_anneal / steps, angular, {});
  };
  unsigned steps = refinement;
  StateVector coarse = run(steps);
  for (unsigned d = 0; d < options.max_doublings; ++d) {
    steps *= 2;
    StateVector fine = run(steps);
    const double change = fine.max_abs_difference(coarse);
    if (change < options.tolerance) return ReferenceResult{std::move(fine), steps, change};
    coarse = std::move(fine);
  }
  throw OracleError(fmt::format("reference_evolve did not converge to {} within {} steps", options.tolerance, steps));
}

std::string TrotterTable::to_csv() const {
  std::string out = "tau,steps,error_combined,error_split,combined_vs_split,ratio_combined,ratio_split,ratio_mutual\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; };
  for (const auto& r : rows) {
    out += format_double(r.tau) + "," + std::to_string(r.steps) + "," + format_double(r.error_combined) + "," +
           format_double(r.error_split) + "," + format_double(r.combined_vs_split) + "," + opt(r.ratio_combined) +
           "," + opt(r.ratio_split) + "," + opt(r.ratio_mutual) + "\n";
  }
  return out;
}

TrotterTable trotter_order_check(const IsingProblem& problem, const AnnealingSchedule& schedule, double t_anneal,
                                 const std::vector<double>& taus, TimeSampling sampling,
                                 const PhaseConvention& convention) {
  if (problem.num_qubits() > 10) throw CapacityError("trotter_order_check is limited to 10 qubits");
  const ReferenceResult reference = reference_evolve(problem, schedule, t_anneal, 64, {}, convention);
  TrotterTable table;
  table.reference_steps = reference.steps;
  for (double tau : taus) {
    const double ratio = t_anneal / tau;
    const auto steps = static_cast<unsigned>(std::llround(ratio));
    if (steps < 1 || std::abs(ratio - steps) > 1e-9 * ratio) {
      throw DomainError(fmt::format("t_anneal / tau = {} is not an integer", ratio));
    }
    AqaConfig config;
    config.n = steps - 1;
    config.tau = t_anneal / steps;
    config.schedule = schedule;
    config.sampling = sampling;
    config.convention = convention;
    config.form = AqaForm::kCombined;
    const AqaResult combined = aqa_run(problem, config);
    config.form = AqaForm::kSplit;
    const AqaResult split = aqa_run(problem, config);

    TrotterRow row;
    row.tau = config.tau;
    row.steps = steps;
    row.error_combined = max_difference_up_to_phase(combined.state, reference.state);
    row.error_split = max_difference_up_to_phase(split.state, reference.state);
    row.combined_vs_split = max_difference_up_to_phase(combined.state, split.state);
    if (!table.rows.empty()) {
      const TrotterRow& prev = table.rows.back();
      row.ratio_combined = prev.error_combined / row.error_combined;
      row.ratio_split = prev.error_split / row.error_split;
      row.ratio_mutual = prev.combined_vs_split / row.combined_vs_split;
    }
    table.rows.push_back(row);
  }
  return table;
}

std::string ExponentialFit::to_json() const {
  nlohmann::ordered_json j;
  j["alpha"] = alpha;
  j["intercept"] = intercept;
  j["residual"] = residual;
  j["points"] = points;
  if (!warnings.empty()) j["warnings"] = warnings;
  return j.dump(2);
}

ExponentialFit fit_exponential_decay(const std::vector<ScalingPoint>& points) {
  ExponentialFit fit;
  std::vector<double> xs, ys;
  for (const auto& p : points) {
    if (!(p.success > 0.0)) {
      fit.warnings.push_back(fmt::format("excluded {} (N={}): success probability {} is not positive", p.instance,
                                         p.num_qubits, p.success));
      continue;
    }
    xs.push_back(p.num_qubits);
    ys.push_back(std::log2(p.success));
  }
  fit.points = xs.size();
  if (xs.size() < 2 || std::set<double>(xs.begin(), xs.end()).size() < 2) {
    throw DomainError("exponential fit needs at least two distinct N with positive success");
  }
  const double count = static_cast<double>(xs.size());
  double mean_x = 0, mean_y = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mean_x += xs[k] / count;
    mean_y += ys[k] / count;
  }
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mean_x) * (xs[k] - mean_x);
    sxy += (xs[k] - mean_x) * (ys[k] - mean_y);
  }
  const double slope = sxy / sxx;
  fit.alpha = -slope;
  fit.intercept = mean_y - slope * mean_x;
  double ss = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double r = ys[k] - (fit.intercept + slope * xs[k]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / count);
  return fit;
}

std::string ScalingStudy::to_csv() const {
  std::string out = "N,instance,success\n";
  for (const auto& p : table) out += std::to_string(p.num_qubits) + "," + p.instance + "," + format_double(p.success) + "\n";
  return out;
}

ScalingStudy scaling_study(const std::vector<LabeledProblem>& instances, const AqaConfig& config) {
  std::set<unsigned> sizes;
  for (const auto& inst : instances) {
    if (!inst.problem.known_solution()) throw DomainError("scaling study instance " + inst.label + " has no known solution");
    sizes.insert(inst.problem.num_qubits());
  }
  if (sizes.size() < 3) throw DomainError("scaling study needs at least three distinct problem sizes");
  ScalingStudy study;
  study.table.resize(instances.size());
  // Independent runs; each owns its state vector.
#pragma omp parallel for schedule(dynamic)
  for (long long k = 0; k < static_cast<long long>(instances.size()); ++k) {
    const auto& inst = instances[static_cast<std::size_t>(k)];
    const AqaResult result = aqa_run(inst.problem, config);
    study.table[static_cast<std::size_t>(k)] = {inst.problem.num_qubits(), inst.label, *result.success_probability};
  }
  study.fit = fit_exponential_decay(study.table);
  return study;
}

std::string WorkComparison::to_json() const {
  nlohmann::ordered_json j;
  j["qaoa_calls"] = qaoa_calls;
  j["qaoa_layers"] = qaoa_layers;
  j["qaoa_work"] = qaoa_work;
  j["aqa_steps"] = aqa_steps;
  j["aqa_work"] = aqa_work;
  j["qaoa_success"] = qaoa_success ? nlohmann::ordered_json(*qaoa_success) : nlohmann::ordered_json(nullptr);
  j["aqa_success"] = aqa_success ? nlohmann::ordered_json(*aqa_success) : nlohmann::ordered_json(nullptr);
  j["work_ratio"] = work_ratio;
  return j.dump(2);
}

WorkComparison work_comparison(const AqaResult& aqa, unsigned n, const OptTrace& trace, std::size_t p) {
  WorkComparison report;
  report.qaoa_calls = trace.entries.size();
  report.qaoa_layers = p;
  report.qaoa_work = qaoa_work(report.qaoa_calls, p);
  report.aqa_steps = n;
  report.aqa_work = static_cast<std::size_t>(n) + 1;
  if (trace.best_success_index) report.qaoa_success = trace.entries[*trace.best_success_index].success_probability;
  report.aqa_success = aqa.success_probability;
  report.work_ratio = static_cast<double>(report.qaoa_work) / static_cast<double>(report.aqa_work);
  return report;
}

}  // namespace annealsim
