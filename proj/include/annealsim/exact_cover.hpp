#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "annealsim/ising.hpp"
#include "annealsim/types.hpp"

namespace annealsim {

/// min_x sum_f (sum_i a_if x_i - 1)^2 over x in {0,1}^N. Rows are variables,
/// columns are clauses; the right-hand side b is the all-ones vector.
struct ExactCoverInstance {
  unsigned num_variables = 0;
  unsigned num_clauses = 0;
  /// Row-major N x F, entries 0 or 1.
  std::vector<std::uint8_t> a;
  std::string label;
  /// Planted cover as a basis label (bit i = x_i), when known.
  std::optional<BasisLabel> planted;

  ExactCoverInstance() = default;
  ExactCoverInstance(unsigned n, unsigned f, std::vector<std::uint8_t> entries, std::string label = {});

  std::uint8_t operator()(unsigned i, unsigned f) const { return a[static_cast<std::size_t>(i) * num_clauses + f]; }

  friend bool operator==(const ExactCoverInstance&, const ExactCoverInstance&) = default;
};

/// Objective value for the assignment encoded in `x` (bit i = x_i).
std::int64_t objective(const ExactCoverInstance& instance, BasisLabel x);

/// Ising form with E(z(x)) + C = objective(x); the planted cover, if any,
/// becomes the known solution.
IsingProblem to_ising(const ExactCoverInstance& instance);

struct RescaleResult {
  IsingProblem problem;
  double divisor = 1.0;
};

/// Divides h, J and C by r = max(max h/2, min h/(-2), max J/1, min J/(-1), 0).
/// r <= 1e-12 leaves the problem unchanged with r = 1.
RescaleResult rescale(const IsingProblem& problem);

struct BruteForceResult {
  double min_energy = 0.0;
  /// Ascending.
  std::vector<BasisLabel> minimizers;
};

inline constexpr unsigned kBruteForceLimit = 30;

/// Exact minimum of E(z) (constant excluded) by full enumeration.
BruteForceResult brute_force(const IsingProblem& problem);

struct GeneratorOptions {
  unsigned max_attempts = 1000;
  /// Uniqueness of the planted cover is verified by enumeration up to this size.
  unsigned verify_limit = 24;
};

/// Instance with a planted exact cover; unique ground state verified for
/// N <= verify_limit. Deterministic in (n, f, density, seed).
ExactCoverInstance generate_instance(unsigned n, unsigned f, double density, std::uint64_t seed,
                                     const GeneratorOptions& options = {});

ExactCoverInstance parse_instance(const std::filesystem::path& path);
ExactCoverInstance parse_instance_text(const std::string& text);
std::string format_instance(const ExactCoverInstance& instance);
void write_instance(const ExactCoverInstance& instance, const std::filesystem::path& path);

/// Variable-order bit string "x0 x1 ... x{N-1}" for a basis label.
std::string bit_string(BasisLabel z, unsigned num_qubits);
BasisLabel parse_bit_string(const std::string& bits);

/// {"n":..,"h":[..],"j":[[i,j,v],..],"c":..,"solution":"0101.."}
std::string ising_to_json(const IsingProblem& problem);
IsingProblem ising_from_json(const std::string& text);

}  // namespace annealsim
