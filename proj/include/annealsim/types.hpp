#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace annealsim {

using Complex = std::complex<double>;

/// Computational basis label. Bit j of the label is the value of qubit j.
using BasisLabel = std::uint64_t;

/// Largest register the in-memory engine will allocate (16 GiB of amplitudes).
inline constexpr unsigned kMaxQubits = 30;

class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t dimension(unsigned num_qubits) {
  return std::size_t{1} << num_qubits;
}

}  // namespace annealsim
