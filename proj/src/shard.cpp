#include "annealsim/shard.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "annealsim/kernels.hpp"
#include "annealsim/output.hpp"

namespace annealsim {

void TransferLedger::record(const TransferRecord& entry) {
  std::lock_guard lock(mutex_);
  records_.push_back(entry);
}

std::vector<TransferRecord> TransferLedger::records() const {
  std::lock_guard lock(mutex_);
  return records_;
}

std::uint64_t TransferLedger::total_transferred() const {
  std::lock_guard lock(mutex_);
  std::uint64_t total = 0;
  for (const auto& r : records_) total += r.complex_transferred;
  return total;
}

std::size_t TransferLedger::size() const {
  std::lock_guard lock(mutex_);
  return records_.size();
}

std::string TransferLedger::to_csv() const {
  std::ostringstream out;
  out << "gate_index,program_qubit,was_global,complex_transferred\n";
  for (const auto& r : records()) {
    out << r.gate_index << ',' << r.program_qubit << ',' << (r.was_global ? 1 : 0) << ',' << r.complex_transferred
        << '\n';
  }
  return out.str();
}

void TransferLedger::write_csv(const std::filesystem::path& path) const { write_file_atomic(path, to_csv()); }

std::uint64_t ExchangeChannel::swap_halves(std::span<Complex> low, std::span<Complex> high, unsigned local_bit) {
  const std::size_t half = low.size() / 2;
  const std::size_t stride = std::size_t{1} << local_bit;
  // send buffers: low's bit=1 elements, high's bit=0 elements
  std::vector<Complex> send_low(half), send_high(half);
  std::size_t k = 0;
  for (std::size_t base = 0; base < low.size(); base += 2 * stride) {
    for (std::size_t i = 0; i < stride; ++i, ++k) {
      send_low[k] = low[base + stride + i];
      send_high[k] = high[base + i];
    }
  }
  k = 0;
  for (std::size_t base = 0; base < low.size(); base += 2 * stride) {
    for (std::size_t i = 0; i < stride; ++i, ++k) {
      low[base + stride + i] = send_high[k];
      high[base + i] = send_low[k];
    }
  }
  return 2 * half;
}

ShardedState::ShardedState(unsigned n, unsigned m) : num_qubits_(n), local_qubits_(m) {
  shards_.assign(std::size_t{1} << (n - m), std::vector<Complex>(std::size_t{1} << m));
  position_of_.resize(n);
  std::iota(position_of_.begin(), position_of_.end(), 0U);
  qubit_at_ = position_of_;
}

ShardedState ShardedState::shard(const StateVector& state, unsigned local_qubits) {
  const unsigned n = state.num_qubits();
  if (local_qubits < 1 || local_qubits > n) {
    throw DomainError("shard: local qubit count must be in [1, " + std::to_string(n) + "]");
  }
  ShardedState out(n, local_qubits);
  const std::size_t len = std::size_t{1} << local_qubits;
  const auto amps = state.amplitudes();
  for (std::size_t r = 0; r < out.shards_.size(); ++r) {
    std::copy_n(amps.begin() + static_cast<std::ptrdiff_t>(r * len), len, out.shards_[r].begin());
  }
  return out;
}

BasisLabel ShardedState::program_label(std::size_t shard, std::size_t offset) const {
  const BasisLabel physical = (static_cast<BasisLabel>(shard) << local_qubits_) | offset;
  BasisLabel z = 0;
  for (unsigned q = 0; q < num_qubits_; ++q) z |= ((physical >> position_of_[q]) & 1U) << q;
  return z;
}

void ShardedState::relabel_global(unsigned program_qubit) {
  constexpr unsigned kTargetPosition = 0;
  const unsigned global_position = position_of_[program_qubit];
  const unsigned evicted = qubit_at_[kTargetPosition];
  const unsigned global_bit = global_position - local_qubits_;
  const std::size_t pairs = shards_.size() / 2;

  const auto start = std::chrono::steady_clock::now();
  std::vector<std::uint64_t> moved(pairs, 0);
#pragma omp parallel for schedule(static) if (pairs > 1)
  for (long long p = 0; p < static_cast<long long>(pairs); ++p) {
    // p enumerates shard indices with the global bit cleared.
    const std::size_t low_bits = static_cast<std::size_t>(p) & ((std::size_t{1} << global_bit) - 1);
    const std::size_t low = ((static_cast<std::size_t>(p) >> global_bit) << (global_bit + 1)) | low_bits;
    const std::size_t high = low | (std::size_t{1} << global_bit);
    moved[static_cast<std::size_t>(p)] = ExchangeChannel::swap_halves(shards_[low], shards_[high], kTargetPosition);
  }
  const auto stop = std::chrono::steady_clock::now();
  channel_.account(std::accumulate(moved.begin(), moved.end(), std::uint64_t{0}),
                   std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start));

  position_of_[program_qubit] = kTargetPosition;
  position_of_[evicted] = global_position;
  qubit_at_[kTargetPosition] = program_qubit;
  qubit_at_[global_position] = evicted;
}

void ShardedState::apply_single_qubit(unsigned program_qubit, const SingleQubitGate& gate, TransferLedger& ledger) {
  if (program_qubit >= num_qubits_) throw IndexError("program qubit out of range");
  TransferRecord record;
  record.gate_index = operations_++;
  record.program_qubit = program_qubit;
  if (is_global(program_qubit)) {
    const std::uint64_t before = channel_.complex_moved();
    relabel_global(program_qubit);
    record.was_global = true;
    record.complex_transferred = channel_.complex_moved() - before;
    record.pair_count = shards_.size() / 2;
  }
  const unsigned bit = position_of_[program_qubit];
  const auto start = std::chrono::steady_clock::now();
  const auto count = static_cast<long long>(shards_.size());
#pragma omp parallel for schedule(static) if (count > 1)
  for (long long r = 0; r < count; ++r) kernels::rotate(shards_[static_cast<std::size_t>(r)], bit, gate);
  compute_time_ += std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
  ledger.record(record);
}

void ShardedState::apply_diagonal_phase(const DiagonalEnergies& energies, double angle) {
  if (energies.num_qubits() != num_qubits_) throw DomainError("problem size does not match sharded state");
  ++operations_;
  const auto start = std::chrono::steady_clock::now();
  const auto& k = kernels::active();
  const auto count = static_cast<long long>(shards_.size());
#pragma omp parallel for schedule(static) if (count > 1)
  for (long long r = 0; r < count; ++r) {
    auto& shard = shards_[static_cast<std::size_t>(r)];
    std::vector<double> local(shard.size());
    for (std::size_t o = 0; o < shard.size(); ++o) local[o] = energies.at(program_label(static_cast<std::size_t>(r), o));
    k.phase(shard.data(), local.data(), shard.size(), angle);
  }
  compute_time_ += std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
}

StateVector ShardedState::gather() const {
  std::vector<Complex> amps(dimension(num_qubits_));
  for (std::size_t r = 0; r < shards_.size(); ++r) {
    for (std::size_t o = 0; o < shards_[r].size(); ++o) amps[program_label(r, o)] = shards_[r][o];
  }
  return StateVector::from_amplitudes(std::move(amps));
}

}  // namespace annealsim
