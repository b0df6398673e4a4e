#pragma once

#include <optional>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "annealsim/types.hpp"

namespace annealsim {

struct Coupler {
  unsigned i;
  unsigned j;
  double value;

  friend bool operator==(const Coupler&, const Coupler&) = default;
};

/// H_C = sum_i h_i s_i + sum_{i<j} J_ij s_i s_j, plus an additive constant that
/// only enters reported energies. Spins follow SpinConvention.
class IsingProblem {
 public:
  IsingProblem() = default;
  IsingProblem(unsigned num_qubits, std::vector<double> h, std::vector<Coupler> couplers, double constant = 0.0,
               std::optional<BasisLabel> known_solution = std::nullopt);

  unsigned num_qubits() const { return num_qubits_; }
  std::span<const double> fields() const { return h_; }
  /// Sorted by (i, j), i < j, duplicates merged.
  std::span<const Coupler> couplers() const { return couplers_; }
  double constant() const { return constant_; }
  const std::optional<BasisLabel>& known_solution() const { return known_solution_; }
  void set_known_solution(std::optional<BasisLabel> z);

  double coupling(unsigned i, unsigned j) const;

  /// Diagonal energy E(z) without the constant.
  double energy(BasisLabel z) const;

  /// Copy with all fields zeroed (couplers only); used for the zz factor of a Trotter step.
  IsingProblem couplers_only() const;

  /// Neighbour lists (j, J_ij) per qubit.
  const std::vector<std::vector<std::pair<unsigned, double>>>& adjacency() const { return adjacency_; }

  friend bool operator==(const IsingProblem& a, const IsingProblem& b) {
    return a.num_qubits_ == b.num_qubits_ && a.h_ == b.h_ && a.couplers_ == b.couplers_ &&
           a.constant_ == b.constant_ && a.known_solution_ == b.known_solution_;
  }

 private:
  unsigned num_qubits_ = 0;
  std::vector<double> h_;
  std::vector<Coupler> couplers_;
  double constant_ = 0.0;
  std::optional<BasisLabel> known_solution_;
  std::vector<std::vector<std::pair<unsigned, double>>> adjacency_;
};

/// Fills out[k] = E(begin + k) for k < len. Exact for dyadic coefficients;
/// recomputed from scratch at every block boundary otherwise.
void fill_energies(const IsingProblem& problem, BasisLabel begin, std::size_t len, double* out);

/// Diagonal energy table. Materialized as 2^N doubles when N <= kMaterializeLimit,
/// evaluated per range on demand above that.
class DiagonalEnergies {
 public:
  static constexpr unsigned kMaterializeLimit = 26;

  explicit DiagonalEnergies(const IsingProblem& problem);

  unsigned num_qubits() const { return problem_.num_qubits(); }
  const IsingProblem& problem() const { return problem_; }
  bool materialized() const { return !table_.empty(); }

  /// Pointer to E(begin), ..., E(begin + len - 1). Uses `scratch` when not materialized.
  const double* range(BasisLabel begin, std::size_t len, std::vector<double>& scratch) const;

  double at(BasisLabel z) const { return materialized() ? table_[z] : problem_.energy(z); }

 private:
  IsingProblem problem_;
  std::vector<double> table_;
};

}  // namespace annealsim
