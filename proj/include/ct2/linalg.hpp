#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ct2/errors.hpp"
#include "ct2/scalar.hpp"

namespace ct2 {

/// Small dense row-major matrix over either scalar realization.
template <Scalar T> class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.cols_ != b.rows_)
      throw ContractViolation("Matrix product: shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0)
          continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }

  std::vector<T> apply(const std::vector<T> &x) const {
    if (x.size() != cols_)
      throw ContractViolation("Matrix apply: size mismatch");
    std::vector<T> y(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        y[i] += (*this)(i, j) * x[j];
    return y;
  }

  friend bool operator==(const Matrix &, const Matrix &) = default;

  template <Scalar To> Matrix<To> cast() const {
    Matrix<To> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        out(i, j) = scalar_cast<To>((*this)(i, j));
    return out;
  }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

/// Gauss-Jordan inverse. Partial pivoting on magnitude for floats, first
/// nonzero pivot for rationals. Returns nullopt when singular.
template <Scalar T> std::optional<Matrix<T>> inverse(Matrix<T> a) {
  const std::size_t n = a.rows();
  if (a.cols() != n)
    throw ContractViolation("inverse: matrix is not square");
  Matrix<T> inv = Matrix<T>::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    if constexpr (is_exact_v<T>) {
      for (std::size_t r = col; r < n; ++r)
        if (a(r, col) != 0) {
          piv = r;
          break;
        }
    } else {
      double best = 0.0;
      for (std::size_t r = col; r < n; ++r)
        if (abs_value(a(r, col)) > best) {
          best = abs_value(a(r, col));
          piv = r;
        }
      if (best == 0.0)
        piv = n;
    }
    if (piv == n)
      return std::nullopt;
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const T p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0)
        continue;
      const T f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

} // namespace ct2
