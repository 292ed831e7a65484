#ifndef EXACTCAT_MATRIX_HPP
#define EXACTCAT_MATRIX_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "exactcat/errors.hpp"

namespace exactcat {

using Int = std::int64_t;

/// Least nonnegative residue of a modulo q (q > 0).
inline Int mod(Int a, Int q) {
  a %= q;
  return a < 0 ? a + q : a;
}

inline Int ipow(Int base, int exp) {
  Int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

/// Dense row-major integer matrix. Entries are plain integers; every
/// arithmetic helper takes the modulus explicitly so one type serves F_p and
/// Z/p^k alike.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return a_.empty(); }

  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  Int operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Int* row(std::size_t i) { return a_.data() + i * cols_; }
  const Int* row(std::size_t i) const { return a_.data() + i * cols_; }

  const std::vector<Int>& values() const { return a_; }
  std::vector<Int>& values() { return a_; }

  bool is_zero() const {
    for (Int x : a_)
      if (x != 0) return false;
    return true;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> a_;
};

inline Matrix reduce(Matrix m, Int q) {
  for (Int& x : m.values()) x = mod(x, q);
  return m;
}

inline Matrix multiply(const Matrix& a, const Matrix& b, Int q) {
  require(a.cols() == b.rows(), ErrorCode::ShapeMismatch, "matrix product shape");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Int* ci = c.row(i);
    const Int* ai = a.row(i);
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Int x = ai[l];
      if (x == 0) continue;
      const Int* bl = b.row(l);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] = (ci[j] + x * bl[j]) % q;
    }
  }
  return c;
}

inline Matrix add(const Matrix& a, const Matrix& b, Int q) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::ShapeMismatch, "matrix sum shape");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.values().size(); ++i) c.values()[i] = mod(a.values()[i] + b.values()[i], q);
  return c;
}

inline Matrix negate(const Matrix& a, Int q) {
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.values().size(); ++i) c.values()[i] = mod(-a.values()[i], q);
  return c;
}

inline Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

/// Copies `src` into `dst` with its top-left corner at (r0, c0).
inline void place(Matrix& dst, const Matrix& src, std::size_t r0, std::size_t c0) {
  for (std::size_t i = 0; i < src.rows(); ++i)
    for (std::size_t j = 0; j < src.cols(); ++j) dst(r0 + i, c0 + j) = src(i, j);
}

inline Matrix submatrix(const Matrix& a, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) {
  Matrix s(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) s(i, j) = a(r0 + i, c0 + j);
  return s;
}

inline Matrix hstack(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), ErrorCode::ShapeMismatch, "hstack rows");
  Matrix c(a.rows(), a.cols() + b.cols());
  place(c, a, 0, 0);
  place(c, b, 0, a.cols());
  return c;
}

inline Matrix vstack(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.cols(), ErrorCode::ShapeMismatch, "vstack cols");
  Matrix c(a.rows() + b.rows(), a.cols());
  place(c, a, 0, 0);
  place(c, b, a.rows(), 0);
  return c;
}

}  // namespace exactcat

#endif  // EXACTCAT_MATRIX_HPP
