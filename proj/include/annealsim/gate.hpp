#pragma once

#include <array>
#include <cstdint>

#include "annealsim/types.hpp"

namespace annealsim {

/// 2x2 complex matrix in row-major order: {u00, u01, u10, u11}.
struct SingleQubitGate {
  std::array<Complex, 4> u{Complex{1.0}, Complex{}, Complex{}, Complex{1.0}};

  const Complex& operator()(int row, int col) const { return u[static_cast<std::size_t>(2 * row + col)]; }
  Complex& operator()(int row, int col) { return u[static_cast<std::size_t>(2 * row + col)]; }

  SingleQubitGate adjoint() const;
  SingleQubitGate operator*(const SingleQubitGate& rhs) const;

  /// Max-entry deviation of u^dagger u from the identity.
  double unitarity_error() const;
  bool is_unitary(double tol = 1e-12) const { return unitarity_error() <= tol; }

  static SingleQubitGate identity() { return {}; }
  static SingleQubitGate pauli_x();
  static SingleQubitGate pauli_z();
  static SingleQubitGate hadamard();
  /// exp(-i theta/2 sigma^x)
  static SingleQubitGate rx(double theta);
  /// exp(-i theta/2 sigma^z)
  static SingleQubitGate rz(double theta);
  /// exp(i (a sigma^x + b sigma^z)) in closed form.
  static SingleQubitGate xz_exponential(double a, double b);
  /// Haar-ish random unitary from a seeded generator (QR of a complex Gaussian matrix).
  static SingleQubitGate random(std::uint64_t seed);
};

}  // namespace annealsim
