#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "annealsim/shard.hpp"

namespace annealsim {

struct BenchGate {
  unsigned qubit = 0;
  SingleQubitGate gate;
};

/// (H on every qubit) repeated `reps` times, layer by layer.
std::vector<BenchGate> hadamard_circuit(unsigned num_qubits, unsigned reps = 11);

constexpr std::uint64_t hadamard_gate_count(unsigned num_qubits, unsigned reps = 11) {
  return std::uint64_t{reps} * num_qubits;
}

/// elapsed * gates_ref / gates: the time the run would take at the reference
/// circuit's gate count.
double normalize_time(std::uint64_t gates_ref, std::uint64_t gates, double elapsed);

struct BenchReport {
  unsigned num_qubits = 0;
  unsigned local_qubits = 0;
  unsigned reps = 0;
  int threads = 1;
  std::uint64_t gate_count = 0;
  double elapsed_total = 0.0;  // seconds
  double elapsed_compute = 0.0;
  double elapsed_exchange = 0.0;
  double normalized_elapsed = 0.0;
  unsigned reference_num_qubits = 0;
  std::uint64_t transferred = 0;
  /// Largest |p(z) - 2^-N| over the final state; zero-cost check that the run did real work.
  double uniformity_error = 0.0;

  std::string to_json() const;
  static std::string csv_header();
  std::string csv_row() const;
};

/// Runs the Hadamard circuit on a sharded |0...0> with 2^local_qubits amplitudes
/// per shard. Only the gate loop is timed.
BenchReport run_bench(unsigned num_qubits, unsigned local_qubits, unsigned reps = 11, int threads = 1,
                      unsigned reference_num_qubits = 32);

}  // namespace annealsim
