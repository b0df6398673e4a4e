#pragma once

// Amplitude-level compute kernels. Every kernel has a portable scalar
// reference implementation; an AVX2/FMA variant is compiled separately and
// selected at runtime when the CPU supports it. Both variants are exercised
// against each other in tests/test_kernels.cpp.

#include <cstddef>
#include <span>
#include <string_view>

#include "annealsim/gate.hpp"
#include "annealsim/types.hpp"

namespace annealsim::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;

  /// (lo[i], hi[i]) <- m * (lo[i], hi[i]) for i < len. lo and hi do not overlap.
  void (*rotate_pairs)(Complex* lo, Complex* hi, std::size_t len, const SingleQubitGate& m);

  /// Same update on adjacent pairs (amps[2i], amps[2i+1]); len is even.
  void (*rotate_adjacent)(Complex* amps, std::size_t len, const SingleQubitGate& m);

  /// amps[z] <- exp(-i angle energy[z]) amps[z].
  void (*phase)(Complex* amps, const double* energy, std::size_t len, double angle);

  /// sum |amps[i]|^2
  double (*norm_squared)(const Complex* amps, std::size_t len);

  /// sum |amps[i]|^2 weight[i]
  double (*weighted_norm_squared)(const Complex* amps, const double* weight, std::size_t len);
};

const KernelTable& scalar_kernels();

/// nullptr when the variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

/// The table used by the engine. Chosen once on first use; overridable for tests
/// and benchmarks, or with ANNEALSIM_ISA=scalar in the environment.
const KernelTable& active();

/// Applies `gate` to bit `bit` of every index of `amps` (length a power of two),
/// splitting the work into fixed chunks across OpenMP workers.
void rotate(std::span<Complex> amps, unsigned bit, const SingleQubitGate& gate);

/// Returns false (and leaves the selection unchanged) if `isa` is unavailable.
bool select(Isa isa);

}  // namespace annealsim::kernels
