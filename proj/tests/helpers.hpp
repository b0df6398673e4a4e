#pragma once

#include <random>
#include <vector>

#include "annealsim/ising.hpp"
#include "annealsim/state_vector.hpp"
#include "oracle.hpp"

namespace testing_support {

inline std::vector<oracle::Complex> to_vector(const annealsim::StateVector& s) {
  return {s.amplitudes().begin(), s.amplitudes().end()};
}

inline annealsim::StateVector to_state(const std::vector<oracle::Complex>& v) {
  return annealsim::StateVector::from_amplitudes(v);
}

inline oracle::Ising to_oracle(const annealsim::IsingProblem& p) {
  oracle::Ising o;
  o.n = p.num_qubits();
  o.h.assign(p.fields().begin(), p.fields().end());
  for (const auto& c : p.couplers()) o.j[{c.i, c.j}] += c.value;
  return o;
}

/// Dense couplings with Gaussian values.
inline annealsim::IsingProblem random_problem(unsigned n, std::uint64_t seed, double coupler_density = 0.6) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::bernoulli_distribution keep(coupler_density);
  std::vector<double> h(n);
  for (auto& x : h) x = g(rng);
  std::vector<annealsim::Coupler> j;
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = a + 1; b < n; ++b)
      if (keep(rng)) j.push_back({a, b, g(rng)});
  return annealsim::IsingProblem(n, h, j, g(rng));
}

}  // namespace testing_support
