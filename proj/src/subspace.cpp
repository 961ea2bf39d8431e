#include "pqinv/subspace.hpp"

#include <algorithm>

namespace pqinv {

Subspace::Subspace(CMatrix orthonormal_basis) : basis_(std::move(orthonormal_basis)) {
  if (basis_.cols() > basis_.rows()) throw ValidationError("Subspace: more basis vectors than ambient dimension");
  const CMatrix gram = basis_.adjoint() * basis_;
  if ((gram - CMatrix::identity(basis_.cols())).frobenius_norm() > 1e-10)
    throw ValidationError("Subspace: basis is not orthonormal");
}

namespace subspace {

using densela::rank_of_sigma;
using densela::svd;

Subspace range_of(const CMatrix& a, const Tolerances& tol, double scale) {
  const auto d = svd(a);
  return Subspace(d.u.columns(0, rank_of_sigma(d.sigma, tol.rank_rtol, scale)));
}

Subspace kernel_of(const CMatrix& a, const Tolerances& tol, double scale) {
  const auto d = svd(a);
  const std::size_t r = rank_of_sigma(d.sigma, tol.rank_rtol, scale);
  return Subspace(d.v.columns(r, a.cols() - r));
}

Subspace image(const CMatrix& a, const Subspace& s, const Tolerances& tol) {
  if (a.cols() != s.ambient()) throw DimensionError("image: A is " + shape_string(a) + ", S lives in C^" + std::to_string(s.ambient()));
  if (s.dim() == 0) return Subspace::zero(a.rows());
  return range_of(a * s.basis(), tol, densela::norm2(a));
}

Subspace intersect(const Subspace& s, const Subspace& t, const Tolerances& tol) {
  if (s.ambient() != t.ambient()) throw DimensionError("intersect: ambient dimensions differ");
  if (s.dim() == 0 || t.dim() == 0) return Subspace::zero(s.ambient());
  // Null vectors (x; y) of [B_S | -B_T] give B_S x = B_T y in S and T.
  const CMatrix stacked = hcat(s.basis(), -t.basis());
  const auto d = svd(stacked);
  const std::size_t r = rank_of_sigma(d.sigma, tol.rank_rtol, 1.0);
  const std::size_t nullity = stacked.cols() - r;
  if (nullity == 0) return Subspace::zero(s.ambient());
  const CMatrix null_basis = d.v.columns(r, nullity);
  CMatrix coeffs(s.dim(), nullity);
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < nullity; ++j) coeffs(i, j) = null_basis(i, j);
  const auto common = svd(s.basis() * coeffs);
  return Subspace(common.u.columns(0, nullity));
}

Subspace sum(const Subspace& s, const Subspace& t, const Tolerances& tol) {
  if (s.ambient() != t.ambient()) throw DimensionError("sum: ambient dimensions differ");
  return range_of(hcat(s.basis(), t.basis()), tol, 1.0);
}

Subspace orthogonal_complement(const Subspace& s, const Tolerances& tol) {
  return kernel_of(s.basis().adjoint(), tol, 1.0);
}

bool is_direct_sum_all(const Subspace& s, const Subspace& t, const Tolerances& tol) {
  if (s.ambient() != t.ambient()) throw DimensionError("is_direct_sum_all: ambient dimensions differ");
  const std::size_t n = s.ambient();
  return s.dim() + t.dim() == n && intersect(s, t, tol).dim() == 0 && sum(s, t, tol).dim() == n;
}

bool contains(const Subspace& s, const Subspace& t, const Tolerances& tol) {
  if (s.ambient() != t.ambient()) throw DimensionError("contains: ambient dimensions differ");
  if (t.dim() == 0) return true;
  if (t.dim() > s.dim()) return false;
  const CMatrix residual = t.basis() - s.basis() * (s.basis().adjoint() * t.basis());
  const double bound = tol.eq_atol + tol.eq_rtol;
  for (std::size_t j = 0; j < residual.cols(); ++j)
    if (residual.column(j).frobenius_norm() > bound) return false;
  return true;
}

bool equals(const Subspace& s, const Subspace& t, const Tolerances& tol) {
  return s.dim() == t.dim() && contains(s, t, tol) && contains(t, s, tol);
}

double distance(const Subspace& s, const Subspace& t) {
  if (s.ambient() != t.ambient()) throw DimensionError("distance: ambient dimensions differ");
  return (s.projector() - t.projector()).frobenius_norm();
}

}  // namespace subspace
}  // namespace pqinv
