#pragma once

// Dense integer matrices. Exchange, C-, G- and F-matrices all live here.
// Entries are arbitrary precision: exchange matrices of wild type grow
// doubly exponentially along a word.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "gca/errors.hpp"
#include "gca/integer.hpp"

namespace gca {

using Vec = std::vector<Integer>;

inline Integer pos(const Integer& v) { return v > 0 ? v : Integer(0); }

// Narrowing with a range check, for entries that become exponents or loop
// bounds.
inline std::int64_t to_i64(const Integer& v) {
  if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("integer " + v.str() + " exceeds 64 bits");
  return v.convert_to<std::int64_t>();
}
inline std::int32_t to_i32(const Integer& v) {
  if (v > INT32_MAX || v < INT32_MIN) throw OverflowError("integer " + v.str() + " exceeds 32 bits");
  return v.convert_to<std::int32_t>();
}

inline Integer dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw StructuralError("dot: length mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vec add(Vec a, const Vec& b) {
  if (a.size() != b.size()) throw StructuralError("add: length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline Vec sub(Vec a, const Vec& b) {
  if (a.size() != b.size()) throw StructuralError("sub: length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline Vec to_vec(const std::vector<std::int64_t>& v) { return {v.begin(), v.end()}; }

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, Integer(0)) {
    if (rows < 0 || cols < 0) throw StructuralError("IntMatrix: negative dimension");
  }
  IntMatrix(std::initializer_list<std::initializer_list<Integer>> rows) {
    rows_ = int(rows.size());
    cols_ = rows_ == 0 ? 0 : int(rows.begin()->size());
    data_.reserve(std::size_t(rows_) * cols_);
    for (const auto& row : rows) {
      if (int(row.size()) != cols_) throw StructuralError("IntMatrix: ragged initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static IntMatrix diagonal(const Vec& d) {
    IntMatrix m(int(d.size()), int(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(int(i), int(i)) = d[i];
    return m;
  }
  static IntMatrix from_rows(const std::vector<Vec>& rows) {
    IntMatrix m(int(rows.size()), rows.empty() ? 0 : int(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i) {
      if (int(rows[i].size()) != m.cols()) throw StructuralError("IntMatrix: ragged rows");
      for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  Integer& operator()(int i, int j) { return data_[index(i, j)]; }
  const Integer& operator()(int i, int j) const { return data_[index(i, j)]; }

  Vec column(int j) const {
    Vec v(rows_, Integer(0));
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  Vec row(int i) const {
    Vec v(cols_, Integer(0));
    for (int j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
  }
  void set_column(int j, const Vec& v) {
    if (int(v.size()) != rows_) throw StructuralError("set_column: length mismatch");
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  // Submatrix of the first `r` rows and `c` columns.
  IntMatrix top_left(int r, int c) const {
    if (r > rows_ || c > cols_) throw StructuralError("top_left: out of range");
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

  IntMatrix transpose() const {
    IntMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  IntMatrix operator-() const {
    IntMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = -data_[i];
    return m;
  }

  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    a.require_same_shape(b, "+");
    IntMatrix m(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = a.data_[i] + b.data_[i];
    return m;
  }
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    a.require_same_shape(b, "-");
    IntMatrix m(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = a.data_[i] - b.data_[i];
    return m;
  }
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw StructuralError("matrix product: inner dimension mismatch");
    IntMatrix m(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int l = 0; l < a.cols_; ++l) {
        const Integer& x = a(i, l);
        if (x == 0) continue;
        for (int j = 0; j < b.cols_; ++j) m(i, j) += x * b(l, j);
      }
    return m;
  }
  friend IntMatrix operator*(const Integer& s, const IntMatrix& a) {
    IntMatrix m(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = s * a.data_[i];
    return m;
  }
  friend Vec operator*(const IntMatrix& a, const Vec& v) {
    if (int(v.size()) != a.cols_) throw StructuralError("matrix-vector product: length mismatch");
    Vec out(a.rows_, Integer(0));
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

  bool operator==(const IntMatrix& o) const = default;

  // Entrywise [x]_+.
  IntMatrix positive_part() const {
    IntMatrix m = *this;
    for (auto& x : m.data_) x = pos(x);
    return m;
  }
  // Keep only column k (the B^{.k} operation).
  IntMatrix only_column(int k) const {
    IntMatrix m(rows_, cols_);
    for (int i = 0; i < rows_; ++i) m(i, k) = (*this)(i, k);
    return m;
  }
  // Keep only row k (the B^{k.} operation).
  IntMatrix only_row(int k) const {
    IntMatrix m(rows_, cols_);
    for (int j = 0; j < cols_; ++j) m(k, j) = (*this)(k, j);
    return m;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
  }
  bool is_skew_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if ((*this)(i, j) != -(*this)(j, i)) return false;
    return true;
  }

  std::vector<Vec> to_rows() const {
    std::vector<Vec> out;
    for (int i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  std::string str() const {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < rows_; ++i) {
      os << (i ? ",[" : "[");
      for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
      os << ']';
    }
    os << ']';
    return os.str();
  }

 private:
  std::size_t index(int i, int j) const {
    if (i < 0 || j < 0 || i >= rows_ || j >= cols_) throw StructuralError("IntMatrix: index out of range");
    return std::size_t(i) * cols_ + j;
  }
  void require_same_shape(const IntMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw StructuralError(std::string("matrix ") + op + ": shape mismatch");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Integer> data_;
};

// J_n^k: identity with the (k,k) entry replaced by -1.
inline IntMatrix flip_matrix(int n, int k) {
  IntMatrix j = IntMatrix::identity(n);
  j(k, k) = -1;
  return j;
}

// Integer vectors are compared and printed often enough to deserve helpers.
inline std::string vec_str(const Vec& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

inline Integer lcm_of(const Vec& v) {
  Integer l = 1;
  for (const auto& x : v) l = boost::multiprecision::lcm(l, x);
  return l;
}

}  // namespace gca
