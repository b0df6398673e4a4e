#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "annealsim/gate.hpp"
#include "annealsim/ising.hpp"
#include "annealsim/state_vector.hpp"

namespace annealsim {

struct TransferRecord {
  std::uint64_t gate_index = 0;
  unsigned program_qubit = 0;
  bool was_global = false;
  std::uint64_t complex_transferred = 0;
  std::uint64_t pair_count = 0;
};

/// Per-gate record of the amplitudes moved between shards. Appends are serialized.
class TransferLedger {
 public:
  void record(const TransferRecord& entry);
  std::vector<TransferRecord> records() const;
  std::uint64_t total_transferred() const;
  std::size_t size() const;

  /// gate_index,program_qubit,was_global,complex_transferred
  std::string to_csv() const;
  void write_csv(const std::filesystem::path& path) const;

 private:
  mutable std::mutex mutex_;
  std::vector<TransferRecord> records_;
};

/// Stand-in for the network between shard owners. Every amplitude crossing a
/// shard boundary goes through `swap_halves`, which stages the data in send and
/// receive buffers the way a pairwise MPI exchange would.
class ExchangeChannel {
 public:
  /// Swaps the `local_bit` = 1 half of `low` with the `local_bit` = 0 half of
  /// `high`. Safe to call concurrently for disjoint shard pairs. Returns the
  /// number of complex numbers that crossed the channel (both directions).
  static std::uint64_t swap_halves(std::span<Complex> low, std::span<Complex> high, unsigned local_bit);

  void account(std::uint64_t moved, std::chrono::nanoseconds elapsed) {
    moved_ += moved;
    elapsed_ += elapsed;
  }
  std::uint64_t complex_moved() const { return moved_; }
  std::chrono::nanoseconds elapsed() const { return elapsed_; }

 private:
  std::uint64_t moved_ = 0;
  std::chrono::nanoseconds elapsed_{0};
};

/// State split into 2^(N-M) shards of 2^M amplitudes. Physical bit positions
/// 0..M-1 are local (offset within a shard), M..N-1 are global (shard index).
/// permutation()[q] is the physical position of program qubit q.
class ShardedState {
 public:
  static ShardedState shard(const StateVector& state, unsigned local_qubits);

  unsigned num_qubits() const { return num_qubits_; }
  unsigned local_qubits() const { return local_qubits_; }
  std::size_t shard_count() const { return shards_.size(); }
  std::span<const Complex> shard_data(std::size_t r) const { return shards_[r]; }
  std::span<const unsigned> permutation() const { return position_of_; }
  bool is_global(unsigned program_qubit) const { return position_of_.at(program_qubit) >= local_qubits_; }

  /// Local qubit: in-place update, zero transfer. Global qubit: each shard pair
  /// swaps half its amplitudes once, the qubit is relabeled onto physical
  /// position 0 (whose occupant becomes global), and the update runs locally.
  void apply_single_qubit(unsigned program_qubit, const SingleQubitGate& gate, TransferLedger& ledger);

  /// Diagonal in every labeling, so never moves data. Not recorded in the ledger.
  void apply_diagonal_phase(const DiagonalEnergies& energies, double angle);

  StateVector gather() const;

  const ExchangeChannel& channel() const { return channel_; }
  std::chrono::nanoseconds compute_time() const { return compute_time_; }
  std::uint64_t operations() const { return operations_; }

 private:
  ShardedState(unsigned n, unsigned m);
  BasisLabel program_label(std::size_t shard, std::size_t offset) const;
  void relabel_global(unsigned program_qubit);

  unsigned num_qubits_ = 0;
  unsigned local_qubits_ = 0;
  std::vector<std::vector<Complex>> shards_;
  std::vector<unsigned> position_of_;  // program qubit -> physical position
  std::vector<unsigned> qubit_at_;     // physical position -> program qubit
  ExchangeChannel channel_;
  std::chrono::nanoseconds compute_time_{0};
  std::uint64_t operations_ = 0;
};

}  // namespace annealsim
