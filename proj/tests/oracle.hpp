#pragma once

// Dense linear-algebra reference used only by the tests. Nothing here calls
// into the library's kernels, so agreement is an independent check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

struct Matrix {
  std::size_t n = 0;
  std::vector<Complex> a;

  explicit Matrix(std::size_t size = 0) : n(size), a(size * size) {}
  Complex& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

inline Matrix identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

inline Matrix two_by_two(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

inline Matrix sigma_x() { return two_by_two(0, 1, 1, 0); }
// |0> -> -1, |1> -> +1
inline Matrix sigma_z() { return two_by_two(-1, 0, 0, 1); }

inline Matrix operator*(const Matrix& x, const Matrix& y) {
  Matrix out(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.n; ++k) {
      const Complex v = x(i, k);
      if (v == Complex{}) continue;
      for (std::size_t j = 0; j < x.n; ++j) out(i, j) += v * y(k, j);
    }
  return out;
}

inline Matrix operator+(Matrix x, const Matrix& y) {
  for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
  return x;
}

inline Matrix operator*(Complex s, Matrix x) {
  for (auto& v : x.a) v *= s;
  return x;
}

inline Matrix kron(const Matrix& x, const Matrix& y) {
  Matrix out(x.n * y.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j)
      for (std::size_t k = 0; k < y.n; ++k)
        for (std::size_t l = 0; l < y.n; ++l) out(i * y.n + k, j * y.n + l) = x(i, j) * y(k, l);
  return out;
}

// Qubit q is bit q of the basis index, so the highest qubit is the leftmost factor.
inline Matrix embed(unsigned num_qubits, unsigned q, const Matrix& m) {
  Matrix out = identity(1);
  for (int k = static_cast<int>(num_qubits) - 1; k >= 0; --k) {
    out = kron(out, static_cast<unsigned>(k) == q ? m : identity(2));
  }
  return out;
}

inline double norm1(const Matrix& m) {
  double best = 0;
  for (std::size_t c = 0; c < m.n; ++c) {
    double s = 0;
    for (std::size_t r = 0; r < m.n; ++r) s += std::abs(m(r, c));
    best = std::max(best, s);
  }
  return best;
}

// Scaling and squaring with a long Taylor series.
inline Matrix expm(const Matrix& m) {
  int squarings = 0;
  double nrm = norm1(m);
  while (nrm > 0.25) {
    nrm /= 2;
    ++squarings;
  }
  const Matrix scaled = std::ldexp(1.0, -squarings) * m;
  Matrix result = identity(m.n);
  Matrix term = identity(m.n);
  for (int k = 1; k <= 30; ++k) {
    term = (1.0 / k) * (term * scaled);
    result = result + term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

inline std::vector<Complex> apply(const Matrix& m, const std::vector<Complex>& v) {
  std::vector<Complex> out(m.n);
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j) out[i] += m(i, j) * v[j];
  return out;
}

inline double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// Ising model written out independently of the library type.
struct Ising {
  unsigned n = 0;
  std::vector<double> h;
  std::map<std::pair<unsigned, unsigned>, double> j;

  double energy(std::uint64_t z) const {
    auto s = [&](unsigned q) { return ((z >> q) & 1U) ? 1.0 : -1.0; };
    double e = 0;
    for (unsigned i = 0; i < n; ++i) e += h[i] * s(i);
    for (const auto& [ij, v] : j) e += v * s(ij.first) * s(ij.second);
    return e;
  }

  Matrix hamiltonian() const {
    Matrix m(std::size_t{1} << n);
    for (std::size_t z = 0; z < m.n; ++z) m(z, z) = energy(z);
    return m;
  }
};

inline Matrix driver(unsigned n) {
  Matrix m(std::size_t{1} << n);
  for (unsigned q = 0; q < n; ++q) m = m + embed(n, q, sigma_x());
  return m;
}

inline std::vector<Complex> plus_state(unsigned n) {
  const std::size_t dim = std::size_t{1} << n;
  return std::vector<Complex>(dim, Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
}

inline std::vector<Complex> random_state(unsigned n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Complex> v(std::size_t{1} << n);
  double norm = 0;
  for (auto& x : v) {
    x = {g(rng), g(rng)};
    norm += std::norm(x);
  }
  for (auto& x : v) x /= std::sqrt(norm);
  return v;
}

inline Complex inner(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace oracle
