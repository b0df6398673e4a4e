#pragma once

#include <cstddef>
#include <vector>

namespace annealsim::parallel {

/// Amplitudes per reduction leaf. Reductions are summed per block and then
/// combined by a fixed pairwise tree, so results are bitwise reproducible for
/// any worker count.
inline constexpr std::size_t kReductionBlock = std::size_t{1} << 12;

void set_num_threads(int threads);
int num_threads();

/// Pairwise sum over a fixed binary tree of `values` (left-to-right leaves).
double pairwise_sum(std::vector<double> values);

/// Splits [0, count) into kReductionBlock-sized leaves, evaluates `leaf(begin, end)`
/// for each in parallel, then combines with pairwise_sum.
template <class Leaf>
double block_reduce(std::size_t count, Leaf&& leaf) {
  const std::size_t blocks = count == 0 ? 0 : (count + kReductionBlock - 1) / kReductionBlock;
  std::vector<double> partial(blocks, 0.0);
  const auto nblocks = static_cast<long long>(blocks);
#pragma omp parallel for schedule(static) if (blocks > 1)
  for (long long b = 0; b < nblocks; ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t end = begin + kReductionBlock < count ? begin + kReductionBlock : count;
    partial[static_cast<std::size_t>(b)] = leaf(begin, end);
  }
  return pairwise_sum(std::move(partial));
}

}  // namespace annealsim::parallel
