#include "annealsim/qaoa.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "annealsim/output.hpp"

namespace annealsim {

void apply_mixer(StateVector& state, double beta) {
  if (beta == 0.0) return;
  // exp(-i beta sigma^x) = exp(i(a sigma^x + 0 sigma^z)) with a = -beta.
  const SingleQubitGate gate = SingleQubitGate::xz_exponential(-beta, 0.0);
  for (unsigned q = 0; q < state.num_qubits(); ++q) state.apply_single_qubit(q, gate);
}

QaoaCircuit::QaoaCircuit(IsingProblem problem, double scale) : energies_(problem), scale_(scale) {}

StateVector QaoaCircuit::prepare(const VariationalParams& params) const {
  if (params.beta.size() != params.gamma.size() || params.beta.empty()) {
    throw DomainError("QAOA parameters need equal, non-zero numbers of beta and gamma values");
  }
  StateVector state = StateVector::plus_state(problem().num_qubits());
  for (std::size_t k = 0; k < params.steps(); ++k) {
    state.apply_diagonal_phase(energies_, params.gamma[k]);
    apply_mixer(state, params.beta[k]);
  }
  return state;
}

QaoaEvaluation QaoaCircuit::observe(const StateVector& state) const {
  QaoaEvaluation out;
  out.energy = state.energy_expectation(energies_);
  out.energy_unscaled = out.energy * scale_;
  if (const auto& solution = problem().known_solution()) out.success_probability = state.basis_probability(*solution);
  return out;
}

QaoaEvaluation QaoaCircuit::evaluate(const VariationalParams& params, bool keep_state) const {
  StateVector state = prepare(params);
  QaoaEvaluation out = observe(state);
  if (keep_state) out.state = std::move(state);
  return out;
}

QaoaEvaluation evaluate(const IsingProblem& problem, const VariationalParams& params, double scale, bool keep_state) {
  return QaoaCircuit(problem, scale).evaluate(params, keep_state);
}

LayerGateCount layer_gate_count(const IsingProblem& problem) {
  return {2 * static_cast<std::size_t>(problem.num_qubits()), problem.couplers().size()};
}

std::string LandscapeGrid::to_csv() const {
  std::string out = "beta,gamma,energy,success\n";
  for (std::size_t i = 0; i < beta_resolution; ++i) {
    for (std::size_t j = 0; j < gamma_resolution; ++j) {
      out += format_double(beta(i)) + "," + format_double(gamma(j)) + "," + format_double(energy_at(i, j)) + "," +
             format_double(success_at(i, j)) + "\n";
    }
  }
  return out;
}

LandscapeGrid grid_scan(const IsingProblem& problem, std::size_t beta_resolution, std::size_t gamma_resolution) {
  if (beta_resolution == 0 || gamma_resolution == 0) throw DomainError("grid resolution must be positive");
  LandscapeGrid grid;
  grid.beta_resolution = beta_resolution;
  grid.gamma_resolution = gamma_resolution;
  grid.beta_max = std::numbers::pi;
  grid.gamma_max = 2 * std::numbers::pi;
  grid.energy.assign(beta_resolution * gamma_resolution, 0.0);
  grid.success.assign(beta_resolution * gamma_resolution, 0.0);
  const QaoaCircuit circuit(problem);
  // Cells are independent; each worker owns its state vector.
  const auto cells = static_cast<long long>(beta_resolution * gamma_resolution);
#pragma omp parallel for schedule(dynamic) if (problem.num_qubits() <= 20)
  for (long long c = 0; c < cells; ++c) {
    const std::size_t i = static_cast<std::size_t>(c) / gamma_resolution;
    const std::size_t j = static_cast<std::size_t>(c) % gamma_resolution;
    VariationalParams params{{grid.beta(i)}, {grid.gamma(j)}, 0.0};
    const QaoaEvaluation e = circuit.evaluate(params);
    grid.energy[static_cast<std::size_t>(c)] = e.energy;
    grid.success[static_cast<std::size_t>(c)] = e.success_probability.value_or(0.0);
  }
  return grid;
}

std::string to_string(OptimizerMethod method) {
  return method == OptimizerMethod::kNelderMead ? "nelder-mead" : "fd-cg";
}

OptimizerMethod parse_optimizer(const std::string& text) {
  if (text == "nelder-mead" || text == "nm") return OptimizerMethod::kNelderMead;
  if (text == "fd-cg" || text == "cg") return OptimizerMethod::kFdConjugateGradient;
  throw DomainError("unknown optimizer '" + text + "' (expected nelder-mead or fd-cg)");
}

std::string OptTrace::to_json_lines() const {
  std::string out;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    nlohmann::ordered_json j;
    j["call"] = e.call;
    j["beta"] = e.params.beta;
    j["gamma"] = e.params.gamma;
    j["energy"] = e.energy;
    j["energy_unscaled"] = e.energy_unscaled;
    if (e.success_probability) {
      j["success"] = *e.success_probability;
    } else {
      j["success"] = nullptr;
    }
    j["best_energy"] = k == best_energy_index;
    j["best_success"] = best_success_index && k == *best_success_index;
    out += j.dump() + "\n";
  }
  return out;
}

OptTrace optimize(const IsingProblem& problem, const VariationalParams& init, OptimizerMethod method,
                  std::size_t max_calls, double scale) {
  if (init.beta.size() != init.gamma.size() || init.beta.empty()) {
    throw DomainError("optimize: initial parameters are inconsistent");
  }
  const QaoaCircuit circuit(problem, scale);
  OptTrace trace;
  BudgetedObjective objective(
      [&](std::span<const double> x) {
        const VariationalParams params = VariationalParams::unflatten(x, init.tau);
        const QaoaEvaluation e = circuit.evaluate(params);
        trace.entries.push_back({trace.entries.size() + 1, params, e.energy, e.energy_unscaled, e.success_probability});
        return e.energy;
      },
      max_calls);

  const std::vector<double> x0 = init.flatten();
  const OptimizerResult result = method == OptimizerMethod::kNelderMead ? nelder_mead(objective, x0)
                                                                        : fd_conjugate_gradient(objective, x0);
  trace.converged = result.converged;

  for (std::size_t k = 0; k < trace.entries.size(); ++k) {
    const auto& e = trace.entries[k];
    if (e.energy < trace.entries[trace.best_energy_index].energy) trace.best_energy_index = k;
    if (e.success_probability &&
        (!trace.best_success_index || *e.success_probability > *trace.entries[*trace.best_success_index].success_probability)) {
      trace.best_success_index = k;
    }
  }
  return trace;
}

double appendix_a_check(const IsingProblem& problem, const AnnealingSchedule& schedule, unsigned p, double tau,
                        const PhaseConvention& convention) {
  if (p < 2) throw DomainError("appendix_a_check needs p >= 2");
  const QaoaCircuit circuit(problem);
  const StateVector qaoa_state = circuit.prepare(qaoa_init(schedule, p, tau, convention));

  const double w = convention.angular_factor(schedule) * tau;
  StateVector product = StateVector::plus_state(problem.num_qubits());
  for (double s : qaoa_grid(p)) {
    const auto [a, b] = schedule.eval(s);
    // exp(i w A H_D / 2) = exp(-i beta H_D) with beta = -w A / 2.
    apply_mixer(product, -w * a / 2);
    product.apply_diagonal_phase(circuit.energies(), w * b);
    apply_mixer(product, -w * a / 2);
  }
  return std::abs(qaoa_state.inner_product(product));
}

}  // namespace annealsim
