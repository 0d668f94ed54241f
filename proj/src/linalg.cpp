#include "kirbycalc/linalg.hpp"

#include <stdexcept>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace kirbycalc {

namespace mp = boost::multiprecision;

bool is_symmetric(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != m.size()) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (m[i][j] != m[j][i]) return false;
  }
  return true;
}

Inertia inertia(const IntMatrix& symmetric) {
  if (!is_symmetric(symmetric)) throw std::invalid_argument("inertia: matrix is not symmetric");
  const std::size_t n = symmetric.size();
  std::vector<std::vector<mp::cpp_rational>> a(n, std::vector<mp::cpp_rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = symmetric[i][j];

  // Congruence a <- E a E^T, processed one pivot at a time on the trailing block.
  auto add_to = [&](std::size_t dst, std::size_t src) {
    for (std::size_t k = 0; k < n; ++k) a[dst][k] += a[src][k];
    for (std::size_t k = 0; k < n; ++k) a[k][dst] += a[k][src];
  };
  auto swap_idx = [&](std::size_t x, std::size_t y) {
    std::swap(a[x], a[y]);
    for (std::size_t k = 0; k < n; ++k) std::swap(a[k][x], a[k][y]);
  };

  Inertia result;
  for (std::size_t p = 0; p < n; ++p) {
    if (a[p][p] == 0) {
      std::size_t diag = n;
      for (std::size_t q = p + 1; q < n && diag == n; ++q)
        if (a[q][q] != 0) diag = q;
      if (diag != n) {
        swap_idx(p, diag);
      } else {
        std::size_t off = n;
        for (std::size_t q = p + 1; q < n && off == n; ++q)
          if (a[p][q] != 0) off = q;
        if (off == n) {
          ++result.zero;  // row p is identically zero in the trailing block
          continue;
        }
        add_to(p, off);  // new a[p][p] = 2 a[p][off] != 0
      }
    }
    const mp::cpp_rational pivot = a[p][p];
    if (pivot > 0) ++result.positive; else ++result.negative;
    for (std::size_t q = p + 1; q < n; ++q) {
      if (a[q][p] == 0) continue;
      const mp::cpp_rational f = a[q][p] / pivot;
      for (std::size_t k = p; k < n; ++k) a[q][k] -= f * a[p][k];
      for (std::size_t k = p; k < n; ++k) a[k][q] -= f * a[k][p];
    }
  }
  return result;
}

std::int64_t determinant(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  std::vector<std::vector<mp::cpp_int>> a(n, std::vector<mp::cpp_int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw std::invalid_argument("determinant: matrix is not square");
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  }
  int sign = 1;
  mp::cpp_int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    }
    prev = a[k][k];
  }
  mp::cpp_int det = a[n - 1][n - 1] * sign;
  return det.convert_to<std::int64_t>();
}

}  // namespace kirbycalc
