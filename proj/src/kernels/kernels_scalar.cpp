#include <cmath>

#include "annealsim/kernels.hpp"

namespace annealsim::kernels {
namespace {

void rotate_pairs(Complex* lo, Complex* hi, std::size_t len, const SingleQubitGate& m) {
  const Complex m00 = m.u[0], m01 = m.u[1], m10 = m.u[2], m11 = m.u[3];
  for (std::size_t i = 0; i < len; ++i) {
    const Complex a0 = lo[i];
    const Complex a1 = hi[i];
    lo[i] = m00 * a0 + m01 * a1;
    hi[i] = m10 * a0 + m11 * a1;
  }
}

void rotate_adjacent(Complex* amps, std::size_t len, const SingleQubitGate& m) {
  const Complex m00 = m.u[0], m01 = m.u[1], m10 = m.u[2], m11 = m.u[3];
  for (std::size_t i = 0; i + 1 < len; i += 2) {
    const Complex a0 = amps[i];
    const Complex a1 = amps[i + 1];
    amps[i] = m00 * a0 + m01 * a1;
    amps[i + 1] = m10 * a0 + m11 * a1;
  }
}

void phase(Complex* amps, const double* energy, std::size_t len, double angle) {
  for (std::size_t i = 0; i < len; ++i) {
    const double theta = -angle * energy[i];
    amps[i] *= Complex{std::cos(theta), std::sin(theta)};
  }
}

double norm_squared(const Complex* amps, std::size_t len) {
  double sum = 0.0;
  for (std::size_t i = 0; i < len; ++i) sum += std::norm(amps[i]);
  return sum;
}

double weighted_norm_squared(const Complex* amps, const double* weight, std::size_t len) {
  double sum = 0.0;
  for (std::size_t i = 0; i < len; ++i) sum += std::norm(amps[i]) * weight[i];
  return sum;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::kScalar, rotate_pairs, rotate_adjacent, phase, norm_squared,
                                 weighted_norm_squared};
  return table;
}

}  // namespace annealsim::kernels
