#pragma once

#include "annealsim/types.hpp"

namespace annealsim {

/// Eigenvalue convention for sigma^z used by every energy and spin observable:
/// |0> is the -1 eigenstate and |1> the +1 eigenstate, i.e. s = 2*bit - 1.
/// This is the reverse of the usual computational convention.
struct SpinConvention {
  static constexpr double spin_of_bit(unsigned bit) { return bit ? 1.0 : -1.0; }

  static constexpr double spin(BasisLabel z, unsigned qubit) {
    return spin_of_bit(static_cast<unsigned>((z >> qubit) & 1U));
  }

  /// Exact-cover variable x_i maps to qubit i with x_i = 1 <-> |1> <-> s_i = +1.
  static constexpr unsigned bit_of_variable(bool x) { return x ? 1U : 0U; }
};

}  // namespace annealsim
