#include "annealsim/parallel.hpp"

#include <omp.h>

namespace annealsim::parallel {

void set_num_threads(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

int num_threads() { return omp_get_max_threads(); }

double pairwise_sum(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::size_t n = values.size();
  while (n > 1) {
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) values[i] = values[2 * i] + values[2 * i + 1];
    if (n % 2 == 1) values[half] = values[n - 1];
    n = half + n % 2;
  }
  return values[0];
}

}  // namespace annealsim::parallel
