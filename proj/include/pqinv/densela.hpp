#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pqinv/cmatrix.hpp"

namespace pqinv {

/// Thresholds threaded through every numerical decision.
struct Tolerances {
  double rank_rtol = 1e-10;  ///< singular values <= rank_rtol * scale count as zero
  double eq_atol = 1e-10;
  double eq_rtol = 1e-8;
  double conv_tol = 1e-8;  ///< limit / integral convergence target

  /// Throws ValidationError on a negative or non-finite field.
  void validate() const;

  /// ||x - y||_F <= eq_atol + eq_rtol * max(||x||_F, ||y||_F)
  bool close(const CMatrix& x, const CMatrix& y) const;
  /// Same bound for a residual whose terms have norm `scale`.
  bool small(double residual, double scale) const { return residual <= eq_atol + eq_rtol * scale; }
};

namespace densela {

struct Svd {
  CMatrix u;  ///< rows x rows, unitary
  std::vector<double> sigma;  ///< descending, min(rows, cols) values
  CMatrix v;  ///< cols x cols, unitary
};

CMatrix matmul(const CMatrix& a, const CMatrix& b);

/// Full SVD A = U diag(sigma) V^H.
Svd svd(const CMatrix& a);

/// Number of singular values above rank_rtol * max(sigma_max, scale).
/// With scale = 0 the cutoff is relative to A itself; products pass the
/// product of their factor norms so that numerically-zero results have rank 0.
std::size_t rank_of_sigma(const std::vector<double>& sigma, double rank_rtol, double scale = 0.0);
std::size_t rank(const CMatrix& a, const Tolerances& tol = {}, double scale = 0.0);

/// Least-squares X with A X = B, returned only when the residual meets
/// eq_atol + eq_rtol * ||B||_F. Throws DimensionError on row mismatch.
/// `scale` enters the rank cutoff as in rank_of_sigma.
std::optional<CMatrix> solve_right(const CMatrix& a, const CMatrix& b, const Tolerances& tol = {},
                                   double scale = 0.0);
/// X with X A = B, via the adjoint system.
std::optional<CMatrix> solve_left(const CMatrix& a, const CMatrix& b, const Tolerances& tol = {},
                                  double scale = 0.0);

/// A = F G, F n x r full column rank, G r x m full row rank.
struct RankFactors {
  CMatrix f;
  CMatrix g;
  std::size_t rank() const noexcept { return f.cols(); }
};
RankFactors rank_factorization(const CMatrix& a, const Tolerances& tol = {});

/// Eigenvalues with multiplicity (order unspecified). Throws NumericalError
/// when the QR iteration fails to converge.
std::vector<cplx> eigenvalues(const CMatrix& a);

/// Throws ValidationError("singular matrix") when the smallest singular value
/// is at or below rank_rtol * sigma_max.
CMatrix inverse(const CMatrix& a, const Tolerances& tol = {});

/// Solves A X = B for square nonsingular A by partial-pivot LU.
CMatrix solve_square(const CMatrix& a, const CMatrix& b);

/// e^A by scaling and squaring around a degree-13 Pade approximant.
CMatrix matrix_exp(const CMatrix& a);

/// Induced 1-norm (max column sum).
double norm1(const CMatrix& a);
/// Largest singular value.
double norm2(const CMatrix& a);

}  // namespace densela
}  // namespace pqinv
