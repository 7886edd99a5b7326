#pragma once

// Exact linear algebra over Z, Z/k and Q.
//
// Integer systems are reduced in two phases: sparse elimination on unit
// pivots (almost all of a coboundary matrix), then a dense Smith normal
// form on whatever is left. Unsolvable systems come back with a
// certificate psi satisfying psi*A integral and psi*b not integral, which
// callers can check independently with verify_integer_certificate.

#include <cstdint>
#include <utility>
#include <vector>

#include "simdiff/numeric.hpp"

namespace simdiff {

template <class T>
using SparseVector = std::vector<std::pair<std::uint32_t, T>>;

template <class T>
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows) {}

  std::size_t rows() const { return data_.size(); }
  std::size_t cols() const { return cols_; }

  /// Accumulates value into (r, c). Call finalize() before reading.
  void add(std::size_t r, std::size_t c, const T& value) {
    if (value != 0) data_.at(r).emplace_back(static_cast<std::uint32_t>(c), value);
  }
  std::size_t add_row() {
    data_.emplace_back();
    return data_.size() - 1;
  }
  void set_cols(std::size_t cols) { cols_ = cols; }
  /// Sorts each row by column, merges duplicates, drops zeros.
  void finalize();

  const SparseVector<T>& row(std::size_t r) const { return data_.at(r); }

  std::vector<T> multiply(const std::vector<T>& x) const;
  std::vector<T> left_multiply(const std::vector<T>& y) const;

 private:
  std::size_t cols_ = 0;
  std::vector<SparseVector<T>> data_;
};

template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }
  std::vector<T> row(std::size_t r) const { return std::vector<T>(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_); }
  std::vector<T> multiply(const std::vector<T>& x) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * x[c];
    }
    return out;
  }
  DenseMatrix operator*(const DenseMatrix& other) const {
    DenseMatrix out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t k = 0; k < cols_; ++k) {
        if ((*this)(r, k) == 0) continue;
        for (std::size_t c = 0; c < other.cols_; ++c) out(r, c) += (*this)(r, k) * other(k, c);
      }
    }
    return out;
  }
  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> a_;
};

using IntMatrix = SparseMatrix<Integer>;
using RatMatrix = SparseMatrix<Rational>;
using DenseInt = DenseMatrix<Integer>;

DenseInt to_dense(const IntMatrix& m);

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ...,
/// all positive. Inverses of U and V are tracked alongside.
struct SmithForm {
  DenseInt U, U_inv, V, V_inv;
  std::vector<Integer> diagonal;  // length rank, positive
  std::size_t rank = 0;
};

SmithForm smith_normal_form(const DenseInt& a);

struct IntegerSolution {
  bool solvable = false;
  std::vector<Integer> x;
  /// Set when unsolvable: psi*A integral, psi*b not integral, and (for a
  /// modulus k) k*psi integral.
  std::vector<Rational> certificate;
};

/// Solves A x = b over Z, or over Z/k when modulus k > 0.
IntegerSolution solve_integer(const IntMatrix& a, const std::vector<Integer>& b, const Integer& modulus = 0);

bool verify_integer_certificate(const IntMatrix& a, const std::vector<Integer>& b, const std::vector<Rational>& psi,
                                const Integer& modulus = 0);

struct RationalSolution {
  bool solvable = false;
  std::vector<Rational> x;
  /// Set when unsolvable: y*A = 0 and y*b != 0.
  std::vector<Rational> certificate;
};

RationalSolution solve_rational(const RatMatrix& a, const std::vector<Rational>& b);
std::size_t rational_rank(const RatMatrix& a);
/// Basis of the rational null space, one vector per free column.
std::vector<std::vector<Rational>> rational_kernel(const RatMatrix& a);

/// Saturated integer kernel of A. basis columns span ker A over Z and
/// coordinates(v) recovers the unique integer combination for v in ker A.
struct IntegerKernel {
  DenseInt basis;        // n x k
  DenseInt coordinates;  // k x n
  std::vector<Integer> coords_of(const std::vector<Integer>& v) const { return coordinates.multiply(v); }
};

IntegerKernel integer_kernel(const DenseInt& a);

RatMatrix to_rational(const IntMatrix& m);

}  // namespace simdiff
