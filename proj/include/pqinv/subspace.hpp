#pragma once

// Column-space realizations of right ideals and annihilators in M_n(C):
// R_r(x) is determined by Ran(x) and K_r(x) by Ker(x), so every ideal
// identity reduces to a subspace identity in C^n.

#include "pqinv/cmatrix.hpp"
#include "pqinv/densela.hpp"

namespace pqinv {

/// Subspace of C^n carried by an orthonormal basis (n x d, d may be 0).
class Subspace {
public:
  /// Throws ValidationError if the columns are not orthonormal to 1e-10.
  explicit Subspace(CMatrix orthonormal_basis);
  static Subspace zero(std::size_t ambient) { return Subspace(CMatrix(ambient, 0)); }
  static Subspace whole(std::size_t ambient) { return Subspace(CMatrix::identity(ambient)); }

  std::size_t ambient() const noexcept { return basis_.rows(); }
  std::size_t dim() const noexcept { return basis_.cols(); }
  const CMatrix& basis() const noexcept { return basis_; }

  /// Orthogonal projector onto the subspace.
  CMatrix projector() const { return basis_ * basis_.adjoint(); }

private:
  CMatrix basis_;
};

namespace subspace {

/// Ran(A). `scale` is forwarded to densela::rank_of_sigma.
Subspace range_of(const CMatrix& a, const Tolerances& tol = {}, double scale = 0.0);
/// Ker(A) in C^{cols}.
Subspace kernel_of(const CMatrix& a, const Tolerances& tol = {}, double scale = 0.0);
/// A * S, rank judged against ||A||_2 so that A S ~ 0 yields {0}.
Subspace image(const CMatrix& a, const Subspace& s, const Tolerances& tol = {});
Subspace intersect(const Subspace& s, const Subspace& t, const Tolerances& tol = {});
Subspace sum(const Subspace& s, const Subspace& t, const Tolerances& tol = {});
Subspace orthogonal_complement(const Subspace& s, const Tolerances& tol = {});

/// C^n = S (+) T: dimensions add to n, the sum fills C^n, the intersection is {0}.
bool is_direct_sum_all(const Subspace& s, const Subspace& t, const Tolerances& tol = {});
/// Every basis vector of T lies in S: ||t - P_S t|| <= eq_atol + eq_rtol.
bool contains(const Subspace& s, const Subspace& t, const Tolerances& tol = {});
bool equals(const Subspace& s, const Subspace& t, const Tolerances& tol = {});

/// ||P_S - P_T||_F, a diagnostic only.
double distance(const Subspace& s, const Subspace& t);

}  // namespace subspace
}  // namespace pqinv
