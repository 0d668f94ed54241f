#pragma once

#include <cstdint>
#include <vector>

namespace kirbycalc {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Counts of positive, negative and zero eigenvalues of a symmetric matrix.
struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;

  int signature() const { return positive - negative; }
  int rank() const { return positive + negative; }
};

/// Exact inertia by rational congruence diagonalisation (Sylvester).
Inertia inertia(const IntMatrix& symmetric);

/// Exact determinant (fraction-free Bareiss elimination, arbitrary precision).
std::int64_t determinant(const IntMatrix& m);

bool is_symmetric(const IntMatrix& m);

}  // namespace kirbycalc
