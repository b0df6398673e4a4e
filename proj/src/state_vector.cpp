#include "annealsim/state_vector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

#include "annealsim/kernels.hpp"
#include "annealsim/parallel.hpp"
#include "annealsim/spin.hpp"

namespace annealsim {

namespace {

constexpr std::size_t kGateChunk = std::size_t{1} << 12;

void check_register(unsigned num_qubits) {
  if (num_qubits == 0) throw DomainError("state vector needs at least one qubit");
  if (num_qubits > kMaxQubits) {
    throw CapacityError("state vector of " + std::to_string(num_qubits) + " qubits exceeds the " +
                        std::to_string(kMaxQubits) + "-qubit memory budget");
  }
}

}  // namespace

StateVector::StateVector(unsigned num_qubits) : num_qubits_(num_qubits) {
  check_register(num_qubits);
  amps_.assign(dimension(num_qubits), Complex{});
}

StateVector StateVector::plus_state(unsigned num_qubits) {
  StateVector psi(num_qubits);
  const double amp = std::pow(2.0, -0.5 * num_qubits);
  std::fill(psi.amps_.begin(), psi.amps_.end(), Complex{amp, 0.0});
  return psi;
}

StateVector StateVector::basis_state(unsigned num_qubits, BasisLabel z) {
  StateVector psi(num_qubits);
  if (z >= psi.size()) throw IndexError("basis label out of range");
  psi.amps_[z] = 1.0;
  return psi;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  if (amplitudes.empty() || !std::has_single_bit(amplitudes.size())) {
    throw DomainError("amplitude count must be a power of two");
  }
  const auto n = static_cast<unsigned>(std::countr_zero(amplitudes.size()));
  check_register(n);
  StateVector psi;
  psi.num_qubits_ = n;
  psi.amps_ = std::move(amplitudes);
  return psi;
}

void StateVector::check_qubit(unsigned qubit) const {
  if (qubit >= num_qubits_) {
    throw IndexError("qubit " + std::to_string(qubit) + " out of range for " + std::to_string(num_qubits_) +
                     "-qubit state");
  }
}

void StateVector::apply_single_qubit(unsigned qubit, const SingleQubitGate& gate) {
  check_qubit(qubit);
  kernels::rotate(amps_, qubit, gate);
}

void StateVector::apply_xz_exponential(unsigned qubit, double a, double b) {
  check_qubit(qubit);
  if (a == 0.0 && b == 0.0) return;
  apply_single_qubit(qubit, SingleQubitGate::xz_exponential(a, b));
}

void StateVector::apply_diagonal_phase(const DiagonalEnergies& energies, double angle) {
  if (energies.num_qubits() != num_qubits_) throw DomainError("problem size does not match state");
  if (angle == 0.0) return;
  const auto& k = kernels::active();
  const std::size_t size = amps_.size();
  const auto chunks = static_cast<long long>((size + kGateChunk - 1) / kGateChunk);
#pragma omp parallel for schedule(static) if (chunks > 1)
  for (long long c = 0; c < chunks; ++c) {
    thread_local std::vector<double> scratch;
    const std::size_t begin = static_cast<std::size_t>(c) * kGateChunk;
    const std::size_t len = std::min(kGateChunk, size - begin);
    k.phase(amps_.data() + begin, energies.range(begin, len, scratch), len, angle);
  }
}

void StateVector::apply_diagonal_phase(const IsingProblem& problem, double angle) {
  apply_diagonal_phase(DiagonalEnergies(problem), angle);
}

double StateVector::norm_squared() const {
  const auto& k = kernels::active();
  return parallel::block_reduce(amps_.size(), [&](std::size_t begin, std::size_t end) {
    return k.norm_squared(amps_.data() + begin, end - begin);
  });
}

double StateVector::energy_expectation(const DiagonalEnergies& energies, bool include_constant) const {
  if (energies.num_qubits() != num_qubits_) throw DomainError("problem size does not match state");
  const auto& k = kernels::active();
  const double e = parallel::block_reduce(amps_.size(), [&](std::size_t begin, std::size_t end) {
    thread_local std::vector<double> scratch;
    const std::size_t len = end - begin;
    return k.weighted_norm_squared(amps_.data() + begin, energies.range(begin, len, scratch), len);
  });
  return include_constant ? e + energies.problem().constant() : e;
}

double StateVector::energy_expectation(const IsingProblem& problem, bool include_constant) const {
  return energy_expectation(DiagonalEnergies(problem), include_constant);
}

double StateVector::basis_probability(BasisLabel z) const {
  if (z >= amps_.size()) throw IndexError("basis label out of range");
  return std::norm(amps_[z]);
}

double StateVector::spin_expectation(unsigned qubit) const {
  check_qubit(qubit);
  const auto& k = kernels::active();
  const std::size_t stride = std::size_t{1} << qubit;
  // Each leaf [begin, end) is split into maximal runs of constant bit value.
  return parallel::block_reduce(amps_.size(), [&](std::size_t begin, std::size_t end) {
    double sum = 0.0;
    std::size_t i = begin;
    while (i < end) {
      const std::size_t run_end = std::min(end, (i / stride + 1) * stride);
      const double weight = SpinConvention::spin(i, qubit);
      sum += weight * k.norm_squared(amps_.data() + i, run_end - i);
      i = run_end;
    }
    return sum;
  });
}

std::vector<double> StateVector::spin_expectations() const {
  std::vector<double> out(num_qubits_);
  for (unsigned q = 0; q < num_qubits_; ++q) out[q] = spin_expectation(q);
  return out;
}

Histogram StateVector::sample(std::uint64_t shots, std::uint64_t seed) const {
  if (shots == 0) throw DomainError("sample: shots must be >= 1");
  std::vector<double> cumulative(amps_.size());
  double running = 0.0;
  for (std::size_t z = 0; z < amps_.size(); ++z) {
    running += std::norm(amps_[z]);
    cumulative[z] = running;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, running);
  Histogram histogram;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = uniform(rng);
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) it = std::lower_bound(cumulative.begin(), cumulative.end(), running);
    ++histogram[static_cast<BasisLabel>(it - cumulative.begin())];
  }
  return histogram;
}

Complex StateVector::inner_product(const StateVector& other) const {
  if (other.size() != size()) throw DomainError("inner product of states with different sizes");
  const double re = parallel::block_reduce(size(), [&](std::size_t b, std::size_t e) {
    double s = 0.0;
    for (std::size_t i = b; i < e; ++i) s += (std::conj(amps_[i]) * other.amps_[i]).real();
    return s;
  });
  const double im = parallel::block_reduce(size(), [&](std::size_t b, std::size_t e) {
    double s = 0.0;
    for (std::size_t i = b; i < e; ++i) s += (std::conj(amps_[i]) * other.amps_[i]).imag();
    return s;
  });
  return {re, im};
}

double StateVector::max_abs_difference(const StateVector& other) const {
  if (other.size() != size()) throw DomainError("comparing states with different sizes");
  double diff = 0.0;
  for (std::size_t i = 0; i < size(); ++i) diff = std::max(diff, std::abs(amps_[i] - other.amps_[i]));
  return diff;
}

double max_difference_up_to_phase(const StateVector& a, const StateVector& b) {
  const Complex overlap = b.inner_product(a);
  const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex{1.0};
  double diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a[i] - phase * b[i]));
  return diff;
}

}  // namespace annealsim
