#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pqinv {

using cplx = std::complex<double>;

/// Thrown when operand shapes do not fit the operation.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an input violates a documented invariant (non-finite entry,
/// non-idempotent p, ...).
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a computation breaks down numerically (axiom check failed
/// after construction, iteration did not converge).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/**
 * Dense row-major complex double-precision matrix.
 *
 * Zero-sized shapes (n x 0, 0 x m) are allowed so that empty subspace bases
 * and rank-0 factors have a natural representation. Matrices built from
 * caller-supplied entries are checked for NaN/Inf.
 */
class CMatrix {
public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static CMatrix identity(std::size_t n);
  static CMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static CMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);
  static CMatrix diag(std::span<const cplx> d);
  static CMatrix diag(std::initializer_list<cplx> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<cplx> data() noexcept { return entries_; }
  std::span<const cplx> data() const noexcept { return entries_; }
  cplx* row(std::size_t i) noexcept { return entries_.data() + i * cols_; }
  const cplx* row(std::size_t i) const noexcept { return entries_.data() + i * cols_; }

  CMatrix adjoint() const;
  /// Columns [first, first + count).
  CMatrix columns(std::size_t first, std::size_t count) const;
  CMatrix column(std::size_t j) const { return columns(j, 1); }

  double frobenius_norm() const;
  bool all_finite() const;

  CMatrix& operator+=(const CMatrix& rhs);
  CMatrix& operator-=(const CMatrix& rhs);
  CMatrix& operator*=(cplx s);

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> entries_;
};

CMatrix operator+(CMatrix lhs, const CMatrix& rhs);
CMatrix operator-(CMatrix lhs, const CMatrix& rhs);
CMatrix operator-(CMatrix m);
CMatrix operator*(cplx s, CMatrix m);
/// Matrix product; same as densela::matmul.
CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);

/// [lhs | rhs]; row counts must agree.
CMatrix hcat(const CMatrix& lhs, const CMatrix& rhs);

/// A^k for square A (A^0 = I).
CMatrix power(const CMatrix& a, unsigned k);

std::string shape_string(const CMatrix& m);

}  // namespace pqinv
