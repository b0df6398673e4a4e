#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

#include "annealsim/kernels.hpp"

namespace annealsim::kernels {

#ifdef ANNEALSIM_HAVE_AVX2
const KernelTable& avx2_table();
#endif

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable* avx2_kernels() {
#ifdef ANNEALSIM_HAVE_AVX2
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable* initial_selection() {
  if (const char* env = std::getenv("ANNEALSIM_ISA"); env != nullptr && std::string(env) == "scalar") {
    return &scalar_kernels();
  }
  if (const KernelTable* simd = avx2_kernels()) return simd;
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_selection()};
  return table;
}

}  // namespace

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void rotate(std::span<Complex> amps, unsigned bit, const SingleQubitGate& gate) {
  constexpr std::size_t kChunk = std::size_t{1} << 12;
  const KernelTable& k = active();
  Complex* data = amps.data();
  const std::size_t size = amps.size();
  if (bit == 0) {
    const auto chunks = static_cast<long long>((size + kChunk - 1) / kChunk);
#pragma omp parallel for schedule(static) if (chunks > 1)
    for (long long c = 0; c < chunks; ++c) {
      const std::size_t begin = static_cast<std::size_t>(c) * kChunk;
      k.rotate_adjacent(data + begin, std::min(kChunk, size - begin), gate);
    }
    return;
  }
  // Pair runs [base, base + stride) and [base + stride, base + 2 stride).
  const std::size_t stride = std::size_t{1} << bit;
  const std::size_t run = std::min(stride, kChunk);
  const std::size_t runs_per_group = stride / run;
  const std::size_t groups = size / (2 * stride);
  const auto tasks = static_cast<long long>(groups * runs_per_group);
#pragma omp parallel for schedule(static) if (tasks > 1)
  for (long long t = 0; t < tasks; ++t) {
    const std::size_t group = static_cast<std::size_t>(t) / runs_per_group;
    const std::size_t offset = (static_cast<std::size_t>(t) % runs_per_group) * run;
    Complex* lo = data + group * 2 * stride + offset;
    k.rotate_pairs(lo, lo + stride, run, gate);
  }
}

bool select(Isa isa) {
  const KernelTable* table = isa == Isa::kScalar ? &scalar_kernels() : avx2_kernels();
  if (table == nullptr) return false;
  current().store(table, std::memory_order_release);
  return true;
}

}  // namespace annealsim::kernels
