#pragma once

#include <cstdint>

#include "radonlab/errors.hpp"

namespace radonlab {

// Size caps shared by the enumeration-heavy operations.
struct Budget {
  double lattice_points = 1e8;   // |Omega_t cap Z^k|
  double summands = 1e9;         // terms in a complete exponential sum
  double support = 5e7;          // output support of sparse convolutions
  double denominators = 2e7;     // members of a denominator set
  double oscillation = 4096.0;   // quasi-norm of 2^{tA} xi accepted by quadrature
};

inline const Budget& default_budget() {
  static const Budget b{};
  return b;
}

inline void check_budget(const char* name, double requested, double cap) {
  if (requested > cap) throw BudgetError(name, requested, cap);
}

}  // namespace radonlab
