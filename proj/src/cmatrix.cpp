#include "pqinv/cmatrix.hpp"

#include <cmath>
#include <sstream>

#include "pqinv/kernels.hpp"

namespace pqinv {

CMatrix::CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw DimensionError("CMatrix: " + std::to_string(entries_.size()) + " entries for shape " +
                         std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  if (!all_finite()) throw ValidationError("CMatrix: non-finite entry");
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<cplx> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("CMatrix::from_rows: ragged rows");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return {r, c, std::move(entries)};
}

CMatrix CMatrix::diag(std::span<const cplx> d) {
  CMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  if (!m.all_finite()) throw ValidationError("CMatrix::diag: non-finite entry");
  return m;
}

CMatrix CMatrix::diag(std::initializer_list<cplx> d) { return diag(std::span<const cplx>(d.begin(), d.size())); }

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

CMatrix CMatrix::columns(std::size_t first, std::size_t count) const {
  if (first + count > cols_) throw DimensionError("CMatrix::columns: range out of bounds");
  CMatrix out(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
  return out;
}

double CMatrix::frobenius_norm() const {
  return std::sqrt(kernels::active().sum_abs2(entries_.size(), entries_.data()));
}

bool CMatrix::all_finite() const {
  for (const auto& z : entries_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw DimensionError("CMatrix +=: " + shape_string(*this) + " vs " + shape_string(rhs));
  kernels::active().axpy(entries_.size(), 1.0, rhs.entries_.data(), entries_.data());
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw DimensionError("CMatrix -=: " + shape_string(*this) + " vs " + shape_string(rhs));
  kernels::active().axpy(entries_.size(), -1.0, rhs.entries_.data(), entries_.data());
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& z : entries_) z *= s;
  return *this;
}

CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }
CMatrix operator-(CMatrix m) { return m *= -1.0; }
CMatrix operator*(cplx s, CMatrix m) { return m *= s; }

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
  if (lhs.cols() != rhs.rows())
    throw DimensionError("matmul: " + shape_string(lhs) + " * " + shape_string(rhs));
  CMatrix out(lhs.rows(), rhs.cols());
  if (out.empty()) return out;
  kernels::active().gemm(lhs.rows(), lhs.cols(), rhs.cols(), lhs.data().data(), rhs.data().data(),
                         out.data().data());
  return out;
}

CMatrix hcat(const CMatrix& lhs, const CMatrix& rhs) {
  if (lhs.rows() != rhs.rows()) throw DimensionError("hcat: " + shape_string(lhs) + " | " + shape_string(rhs));
  CMatrix out(lhs.rows(), lhs.cols() + rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t j = 0; j < lhs.cols(); ++j) out(i, j) = lhs(i, j);
    for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, lhs.cols() + j) = rhs(i, j);
  }
  return out;
}

CMatrix power(const CMatrix& a, unsigned k) {
  if (!a.is_square()) throw DimensionError("power: non-square " + shape_string(a));
  CMatrix out = CMatrix::identity(a.rows());
  for (unsigned i = 0; i < k; ++i) out = out * a;
  return out;
}

std::string shape_string(const CMatrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

}  // namespace pqinv
