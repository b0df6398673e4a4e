// Compiled with -mavx2 -mfma. Only reached through avx2_kernels() after a
// runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "annealsim/kernels.hpp"

namespace annealsim::kernels {
namespace {

static_assert(sizeof(Complex) == 2 * sizeof(double));

// Two complex doubles per register: (re0, im0, re1, im1).
inline __m256d load(const Complex* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store(Complex* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// Broadcast constant c as (re, re, re, re) and (im, im, im, im).
struct Coeff {
  __m256d re;
  __m256d im;
  explicit Coeff(const Complex& c) : re(_mm256_set1_pd(c.real())), im(_mm256_set1_pd(c.imag())) {}
};

// a * c for packed complex a and broadcast complex c.
inline __m256d cmul(__m256d a, const Coeff& c) {
  const __m256d swapped = _mm256_permute_pd(a, 0x5);  // (im, re, im, re)
  return _mm256_fmaddsub_pd(a, c.re, _mm256_mul_pd(swapped, c.im));
}

// a * b with both packed.
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d swapped = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(swapped, b_im));
}

void rotate_pairs(Complex* lo, Complex* hi, std::size_t len, const SingleQubitGate& m) {
  const Coeff m00(m.u[0]), m01(m.u[1]), m10(m.u[2]), m11(m.u[3]);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const __m256d a0 = load(lo + i);
    const __m256d a1 = load(hi + i);
    store(lo + i, _mm256_add_pd(cmul(a0, m00), cmul(a1, m01)));
    store(hi + i, _mm256_add_pd(cmul(a0, m10), cmul(a1, m11)));
  }
  for (; i < len; ++i) {
    const Complex a0 = lo[i];
    const Complex a1 = hi[i];
    lo[i] = m.u[0] * a0 + m.u[1] * a1;
    hi[i] = m.u[2] * a0 + m.u[3] * a1;
  }
}

void rotate_adjacent(Complex* amps, std::size_t len, const SingleQubitGate& m) {
  // Column vectors (m00, m10) and (m01, m11) as packed complex pairs.
  const __m256d col0 = _mm256_setr_pd(m.u[0].real(), m.u[0].imag(), m.u[2].real(), m.u[2].imag());
  const __m256d col1 = _mm256_setr_pd(m.u[1].real(), m.u[1].imag(), m.u[3].real(), m.u[3].imag());
  for (std::size_t i = 0; i + 1 < len; i += 2) {
    const __m256d a = load(amps + i);
    const __m256d a0 = _mm256_permute2f128_pd(a, a, 0x00);
    const __m256d a1 = _mm256_permute2f128_pd(a, a, 0x11);
    store(amps + i, _mm256_add_pd(cmul(a0, col0), cmul(a1, col1)));
  }
}

void phase(Complex* amps, const double* energy, std::size_t len, double angle) {
  // Phase factors come from libm so both variants share the same sin/cos; only
  // the complex products are vectorized.
  alignas(32) double factors[8];
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    for (int k = 0; k < 4; ++k) {
      const double theta = -angle * energy[i + static_cast<std::size_t>(k)];
      factors[2 * k] = std::cos(theta);
      factors[2 * k + 1] = std::sin(theta);
    }
    store(amps + i, cmul(load(amps + i), _mm256_load_pd(factors)));
    store(amps + i + 2, cmul(load(amps + i + 2), _mm256_load_pd(factors + 4)));
  }
  for (; i < len; ++i) {
    const double theta = -angle * energy[i];
    amps[i] *= Complex{std::cos(theta), std::sin(theta)};
  }
}

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

double norm_squared(const Complex* amps, std::size_t len) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d a = load(amps + i);
    const __m256d b = load(amps + i + 2);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  double sum = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < len; ++i) sum += std::norm(amps[i]);
  return sum;
}

double weighted_norm_squared(const Complex* amps, const double* weight, std::size_t len) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const __m256d a = load(amps + i);
    // (w0, w0, w1, w1)
    const __m128d w = _mm_loadu_pd(weight + i);
    const __m256d ww = _mm256_permute4x64_pd(_mm256_castpd128_pd256(w), 0x50);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(a, a), ww, acc);
  }
  double sum = horizontal_sum(acc);
  for (; i < len; ++i) sum += std::norm(amps[i]) * weight[i];
  return sum;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{Isa::kAvx2, rotate_pairs, rotate_adjacent, phase, norm_squared,
                                 weighted_norm_squared};
  return table;
}

}  // namespace annealsim::kernels
