#pragma once

// Exact rational Gaussian elimination. Used for compatible-pair solving,
// dominance feasibility, and reading exponents off g-vectors.

#include <vector>

#include "gca/errors.hpp"
#include "gca/integer.hpp"
#include "gca/matrix.hpp"

namespace gca {

using RatMatrix = std::vector<std::vector<Rational>>;

struct LinearSolution {
  bool consistent = false;
  int rank = 0;
  std::vector<Rational> x;  // a particular solution; free variables set to 0
  std::vector<int> free_columns;
};

inline LinearSolution solve_rational(RatMatrix a, std::vector<Rational> b) {
  const int rows = int(a.size());
  const int cols = rows ? int(a[0].size()) : 0;
  if (int(b.size()) != rows) throw StructuralError("solve_rational: right-hand side length mismatch");
  LinearSolution out;
  std::vector<int> pivot_col;
  int row = 0;
  int c = 0;
  for (; c < cols && row < rows; ++c) {
    int p = row;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) {
      out.free_columns.push_back(c);
      continue;
    }
    std::swap(a[p], a[row]);
    std::swap(b[p], b[row]);
    const Rational inv = 1 / a[row][c];
    for (int j = c; j < cols; ++j) a[row][j] *= inv;
    b[row] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == row || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (int j = c; j < cols; ++j) a[i][j] -= f * a[row][j];
      b[i] -= f * b[row];
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (; c < cols; ++c) out.free_columns.push_back(c);
  out.rank = row;
  out.consistent = true;
  for (int i = row; i < rows; ++i)
    if (b[i] != 0) out.consistent = false;
  out.x.assign(cols, Rational(0));
  if (out.consistent)
    for (int i = 0; i < row; ++i) out.x[pivot_col[i]] = b[i];
  return out;
}

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), std::vector<Rational>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

inline std::vector<Rational> to_rational(const Vec& v) { return {v.begin(), v.end()}; }

inline int rank_of(const IntMatrix& m) {
  return solve_rational(to_rational(m), std::vector<Rational>(m.rows(), Rational(0))).rank;
}

}  // namespace gca
