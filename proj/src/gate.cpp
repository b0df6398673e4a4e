#include "annealsim/gate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace annealsim {

SingleQubitGate SingleQubitGate::adjoint() const {
  SingleQubitGate out;
  out.u = {std::conj(u[0]), std::conj(u[2]), std::conj(u[1]), std::conj(u[3])};
  return out;
}

SingleQubitGate SingleQubitGate::operator*(const SingleQubitGate& rhs) const {
  SingleQubitGate out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      out(r, c) = (*this)(r, 0) * rhs(0, c) + (*this)(r, 1) * rhs(1, c);
    }
  }
  return out;
}

double SingleQubitGate::unitarity_error() const {
  const SingleQubitGate product = adjoint() * (*this);
  double err = 0.0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const Complex expected = r == c ? Complex{1.0} : Complex{};
      err = std::max(err, std::abs(product(r, c) - expected));
    }
  }
  return err;
}

SingleQubitGate SingleQubitGate::pauli_x() {
  SingleQubitGate g;
  g.u = {0.0, 1.0, 1.0, 0.0};
  return g;
}

// sigma^z in the engine's spin convention: diag(-1, +1).
SingleQubitGate SingleQubitGate::pauli_z() {
  SingleQubitGate g;
  g.u = {-1.0, 0.0, 0.0, 1.0};
  return g;
}

SingleQubitGate SingleQubitGate::hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  SingleQubitGate g;
  g.u = {r, r, r, -r};
  return g;
}

SingleQubitGate SingleQubitGate::rx(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  SingleQubitGate g;
  g.u = {Complex{c, 0}, Complex{0, -s}, Complex{0, -s}, Complex{c, 0}};
  return g;
}

SingleQubitGate SingleQubitGate::rz(double theta) {
  // sigma^z = diag(-1, +1), so |0> picks up exp(+i theta/2).
  SingleQubitGate g;
  g.u = {std::polar(1.0, theta / 2), 0.0, 0.0, std::polar(1.0, -theta / 2)};
  return g;
}

SingleQubitGate SingleQubitGate::xz_exponential(double a, double b) {
  // exp(i(a X + b Z)) = cos(w) I + i sin(w)/w (a X + b Z), w = sqrt(a^2 + b^2).
  const double w = std::hypot(a, b);
  if (w == 0.0) return identity();
  const double c = std::cos(w);
  const double sinc = std::sin(w) / w;
  SingleQubitGate g;
  g.u = {Complex{c, -sinc * b}, Complex{0, sinc * a}, Complex{0, sinc * a}, Complex{c, sinc * b}};
  return g;
}

SingleQubitGate SingleQubitGate::random(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  // Gram-Schmidt on two Gaussian columns.
  Complex c0[2] = {{normal(rng), normal(rng)}, {normal(rng), normal(rng)}};
  Complex c1[2] = {{normal(rng), normal(rng)}, {normal(rng), normal(rng)}};
  const double n0 = std::sqrt(std::norm(c0[0]) + std::norm(c0[1]));
  c0[0] /= n0;
  c0[1] /= n0;
  const Complex proj = std::conj(c0[0]) * c1[0] + std::conj(c0[1]) * c1[1];
  c1[0] -= proj * c0[0];
  c1[1] -= proj * c0[1];
  const double n1 = std::sqrt(std::norm(c1[0]) + std::norm(c1[1]));
  c1[0] /= n1;
  c1[1] /= n1;
  SingleQubitGate g;
  g.u = {c0[0], c1[0], c0[1], c1[1]};
  return g;
}

}  // namespace annealsim
