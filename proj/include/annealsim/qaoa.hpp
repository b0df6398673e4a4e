#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "annealsim/ising.hpp"
#include "annealsim/optimize.hpp"
#include "annealsim/schedule.hpp"
#include "annealsim/state_vector.hpp"

namespace annealsim {

struct QaoaEvaluation {
  /// <H_C> (constant excluded) in the units of the simulated problem.
  double energy = 0.0;
  /// energy * scale, i.e. back in unrescaled units.
  double energy_unscaled = 0.0;
  /// Probability of the known solution; empty if the problem has none.
  std::optional<double> success_probability;
  std::optional<StateVector> state;
};

/// Reusable QAOA circuit for one problem: caches the diagonal energy table.
/// State: prod_k exp(-i beta_k H_D) exp(-i gamma_k H_C) |+>^N, H_D = sum_i sigma^x_i.
class QaoaCircuit {
 public:
  /// `scale` multiplies reported energies into energy_unscaled (the rescale divisor r).
  explicit QaoaCircuit(IsingProblem problem, double scale = 1.0);

  const IsingProblem& problem() const { return energies_.problem(); }
  double scale() const { return scale_; }
  const DiagonalEnergies& energies() const { return energies_; }

  StateVector prepare(const VariationalParams& params) const;
  QaoaEvaluation evaluate(const VariationalParams& params, bool keep_state = false) const;

  /// Observables on an already-prepared state.
  QaoaEvaluation observe(const StateVector& state) const;

 private:
  DiagonalEnergies energies_;
  double scale_;
};

QaoaEvaluation evaluate(const IsingProblem& problem, const VariationalParams& params, double scale = 1.0,
                        bool keep_state = false);

/// Mixer layer exp(-i beta sum_i sigma^x_i).
void apply_mixer(StateVector& state, double beta);

/// Equivalent gate counts per layer in the rotation/controlled-phase picture.
struct LayerGateCount {
  std::size_t single_qubit = 0;
  std::size_t two_qubit = 0;
};
LayerGateCount layer_gate_count(const IsingProblem& problem);

struct LandscapeGrid {
  std::size_t beta_resolution = 0;
  std::size_t gamma_resolution = 0;
  double beta_max = 0.0;   // pi; range [0, beta_max)
  double gamma_max = 0.0;  // 2 pi; range [0, gamma_max)
  /// Row-major [beta index][gamma index].
  std::vector<double> energy;
  std::vector<double> success;

  double beta(std::size_t i) const { return beta_max * static_cast<double>(i) / static_cast<double>(beta_resolution); }
  double gamma(std::size_t j) const {
    return gamma_max * static_cast<double>(j) / static_cast<double>(gamma_resolution);
  }
  double energy_at(std::size_t i, std::size_t j) const { return energy[i * gamma_resolution + j]; }
  double success_at(std::size_t i, std::size_t j) const { return success[i * gamma_resolution + j]; }

  /// beta,gamma,energy,success
  std::string to_csv() const;
};

/// p = 1 scan over beta in [0, pi) x gamma in [0, 2 pi). Meant for the unrescaled problem.
LandscapeGrid grid_scan(const IsingProblem& problem, std::size_t beta_resolution = 64,
                        std::size_t gamma_resolution = 64);

enum class OptimizerMethod { kNelderMead, kFdConjugateGradient };
std::string to_string(OptimizerMethod method);
OptimizerMethod parse_optimizer(const std::string& text);

struct TraceEntry {
  std::size_t call = 0;  // 1-based
  VariationalParams params;
  double energy = 0.0;
  double energy_unscaled = 0.0;
  std::optional<double> success_probability;
};

struct OptTrace {
  std::vector<TraceEntry> entries;
  /// Indices into entries; first occurrence on ties.
  std::size_t best_energy_index = 0;
  std::optional<std::size_t> best_success_index;
  bool converged = false;

  const TraceEntry& best_energy() const { return entries.at(best_energy_index); }
  /// One JSON object per line.
  std::string to_json_lines() const;
};

inline constexpr std::size_t kDefaultCallBudget = 200;

/// Minimizes the energy of the QAOA state. Pass the rescaled problem and its
/// divisor so the trace also carries unrescaled energies. Every circuit call
/// lands in the trace, finite-difference probes included.
OptTrace optimize(const IsingProblem& problem, const VariationalParams& init, OptimizerMethod method,
                  std::size_t max_calls = kDefaultCallBudget, double scale = 1.0);

/// m calls of a p-layer circuit.
inline std::size_t qaoa_work(std::size_t calls, std::size_t p) { return calls * p; }

/// |<QAOA(qaoa_init) | U(s_p)...U(s_1)|+>|| with the symmetric product
/// U(s) = exp(i w tau A H_D/2) exp(-i w tau B H_C) exp(i w tau A H_D/2).
double appendix_a_check(const IsingProblem& problem, const AnnealingSchedule& schedule, unsigned p, double tau,
                        const PhaseConvention& convention = {});

}  // namespace annealsim
