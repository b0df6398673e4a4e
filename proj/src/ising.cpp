#include "annealsim/ising.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <tuple>

#include "annealsim/parallel.hpp"
#include "annealsim/spin.hpp"

namespace annealsim {

IsingProblem::IsingProblem(unsigned num_qubits, std::vector<double> h, std::vector<Coupler> couplers,
                           double constant, std::optional<BasisLabel> known_solution)
    : num_qubits_(num_qubits), h_(std::move(h)), constant_(constant) {
  if (num_qubits == 0 || num_qubits > 63) throw DomainError("IsingProblem: qubit count out of range");
  if (h_.size() != num_qubits) throw DomainError("IsingProblem: field count does not match qubit count");
  for (Coupler& c : couplers) {
    if (c.i == c.j || c.i >= num_qubits || c.j >= num_qubits) {
      throw IndexError("IsingProblem: invalid coupler (" + std::to_string(c.i) + ", " + std::to_string(c.j) + ")");
    }
    if (c.i > c.j) std::swap(c.i, c.j);
  }
  std::sort(couplers.begin(), couplers.end(),
            [](const Coupler& a, const Coupler& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
  for (const Coupler& c : couplers) {
    if (!couplers_.empty() && couplers_.back().i == c.i && couplers_.back().j == c.j) {
      couplers_.back().value += c.value;
    } else {
      couplers_.push_back(c);
    }
  }
  adjacency_.assign(num_qubits, {});
  for (const Coupler& c : couplers_) {
    adjacency_[c.i].emplace_back(c.j, c.value);
    adjacency_[c.j].emplace_back(c.i, c.value);
  }
  set_known_solution(known_solution);
}

void IsingProblem::set_known_solution(std::optional<BasisLabel> z) {
  if (z && num_qubits_ < 64 && (*z >> num_qubits_) != 0) throw IndexError("known solution exceeds register");
  known_solution_ = z;
}

double IsingProblem::coupling(unsigned i, unsigned j) const {
  if (i > j) std::swap(i, j);
  auto it = std::lower_bound(couplers_.begin(), couplers_.end(), std::pair{i, j}, [](const Coupler& c, auto key) {
    return std::tie(c.i, c.j) < std::tie(key.first, key.second);
  });
  return it != couplers_.end() && it->i == i && it->j == j ? it->value : 0.0;
}

double IsingProblem::energy(BasisLabel z) const {
  double e = 0.0;
  for (unsigned i = 0; i < num_qubits_; ++i) e += h_[i] * SpinConvention::spin(z, i);
  for (const Coupler& c : couplers_) e += c.value * SpinConvention::spin(z, c.i) * SpinConvention::spin(z, c.j);
  return e;
}

IsingProblem IsingProblem::couplers_only() const {
  return IsingProblem(num_qubits_, std::vector<double>(num_qubits_, 0.0), couplers_, 0.0, known_solution_);
}

void fill_energies(const IsingProblem& problem, BasisLabel begin, std::size_t len, double* out) {
  if (len == 0) return;
  const unsigned n = problem.num_qubits();
  const auto fields = problem.fields();
  const auto& adjacency = problem.adjacency();

  // Local fields f_k = h_k + sum_j J_kj s_j, so flipping spin k changes E by -2 s_k f_k.
  std::vector<double> spin(n), local(n);
  BasisLabel z = begin;
  double e = 0.0;
  auto restart = [&](BasisLabel label) {
    for (unsigned k = 0; k < n; ++k) spin[k] = SpinConvention::spin(label, k);
    for (unsigned k = 0; k < n; ++k) {
      double f = fields[k];
      for (const auto& [j, value] : adjacency[k]) f += value * spin[j];
      local[k] = f;
    }
    e = problem.energy(label);
  };
  restart(z);
  out[0] = e;
  for (std::size_t k = 1; k < len; ++k) {
    const BasisLabel next = z + 1;
    if ((next % parallel::kReductionBlock) == 0) {
      restart(next);
    } else {
      BasisLabel flipped = next ^ z;
      while (flipped != 0) {
        const auto q = static_cast<unsigned>(std::countr_zero(flipped));
        flipped &= flipped - 1;
        e -= 2.0 * spin[q] * local[q];
        spin[q] = -spin[q];
        for (const auto& [j, value] : adjacency[q]) local[j] += 2.0 * spin[q] * value;
      }
    }
    z = next;
    out[k] = e;
  }
}

DiagonalEnergies::DiagonalEnergies(const IsingProblem& problem) : problem_(problem) {
  if (problem.num_qubits() > kMaterializeLimit) return;
  const std::size_t size = dimension(problem.num_qubits());
  table_.resize(size);
  const std::size_t block = parallel::kReductionBlock;
  const auto blocks = static_cast<long long>((size + block - 1) / block);
#pragma omp parallel for schedule(static) if (blocks > 1)
  for (long long b = 0; b < blocks; ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * block;
    fill_energies(problem_, begin, std::min(block, size - begin), table_.data() + begin);
  }
}

const double* DiagonalEnergies::range(BasisLabel begin, std::size_t len, std::vector<double>& scratch) const {
  if (materialized()) return table_.data() + begin;
  scratch.resize(len);
  fill_energies(problem_, begin, len, scratch.data());
  return scratch.data();
}

}  // namespace annealsim
