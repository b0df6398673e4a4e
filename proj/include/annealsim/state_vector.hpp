#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "annealsim/gate.hpp"
#include "annealsim/ising.hpp"
#include "annealsim/types.hpp"

namespace annealsim {

using Histogram = std::map<BasisLabel, std::uint64_t>;

/// Dense pure state of N qubits: 2^N amplitudes, qubit j <-> bit j of the index.
///
/// Mutating operations require a single writer; const observables may run
/// concurrently. Reductions are blocked with a fixed tree (see parallel.hpp).
class StateVector {
 public:
  /// |+>^N
  static StateVector plus_state(unsigned num_qubits);
  static StateVector basis_state(unsigned num_qubits, BasisLabel z);
  /// Takes the amplitudes as given; length must be a power of two.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);

  unsigned num_qubits() const { return num_qubits_; }
  std::size_t size() const { return amps_.size(); }
  std::span<Complex> amplitudes() { return amps_; }
  std::span<const Complex> amplitudes() const { return amps_; }
  const Complex& operator[](BasisLabel z) const { return amps_[z]; }

  void apply_single_qubit(unsigned qubit, const SingleQubitGate& gate);
  /// exp(i (a sigma^x + b sigma^z)) on one qubit.
  void apply_xz_exponential(unsigned qubit, double a, double b);
  /// psi_z <- exp(-i angle E(z)) psi_z. The problem constant is a global phase and is dropped.
  void apply_diagonal_phase(const DiagonalEnergies& energies, double angle);
  void apply_diagonal_phase(const IsingProblem& problem, double angle);

  double norm_squared() const;
  double energy_expectation(const DiagonalEnergies& energies, bool include_constant = false) const;
  double energy_expectation(const IsingProblem& problem, bool include_constant = false) const;
  double basis_probability(BasisLabel z) const;
  /// <sigma^z_qubit> under SpinConvention (bit 1 -> +1).
  double spin_expectation(unsigned qubit) const;
  std::vector<double> spin_expectations() const;

  Histogram sample(std::uint64_t shots, std::uint64_t seed) const;

  /// <this|other>
  Complex inner_product(const StateVector& other) const;
  /// max_z |this_z - other_z|
  double max_abs_difference(const StateVector& other) const;

 private:
  StateVector() = default;
  explicit StateVector(unsigned num_qubits);
  void check_qubit(unsigned qubit) const;

  unsigned num_qubits_ = 0;
  std::vector<Complex> amps_;
};

/// Distance that ignores a global phase: max_z |a_z - e^{i phi} b_z| with phi aligning <b|a>.
double max_difference_up_to_phase(const StateVector& a, const StateVector& b);

}  // namespace annealsim
