#include "pqinv/ginv.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pqinv/subspace.hpp"

namespace pqinv::ginv {
namespace {

// Moore-Penrose inverse with the rank cutoff taken against `scale` as well as
// sigma_max, so that a numerically-zero power of a nilpotent stays zero.
CMatrix pinv_scaled(const CMatrix& a, const Tolerances& tol, double scale) {
  const auto d = densela::svd(a);
  const std::size_t r = densela::rank_of_sigma(d.sigma, tol.rank_rtol, scale);
  CMatrix vr = d.v.columns(0, r);
  for (std::size_t i = 0; i < vr.rows(); ++i)
    for (std::size_t j = 0; j < r; ++j) vr(i, j) /= d.sigma[j];
  return vr * d.u.columns(0, r).adjoint();
}

}  // namespace

double PenroseResiduals::max() const { return std::max({axa_minus_a, xax_minus_x, ax_hermitian, xa_hermitian}); }

double DrazinResiduals::max() const { return std::max({power_identity, outer, commute}); }

PenroseResiduals penrose_residuals(const CMatrix& a, const CMatrix& x) {
  const CMatrix ax = a * x;
  const CMatrix xa = x * a;
  return {(ax * a - a).frobenius_norm(), (xa * x - x).frobenius_norm(), (ax - ax.adjoint()).frobenius_norm(),
          (xa - xa.adjoint()).frobenius_norm()};
}

DrazinResiduals drazin_residuals(const CMatrix& a, const CMatrix& x, unsigned index) {
  const CMatrix ak = power(a, index);
  return {(ak * a * x - ak).frobenius_norm(), (x * a * x - x).frobenius_norm(), (a * x - x * a).frobenius_norm()};
}

CMatrix moore_penrose(const CMatrix& a, const Tolerances& tol) { return pinv_scaled(a, tol, 0.0); }

CMatrix inner_inverse(const CMatrix& a, const Tolerances& tol) { return moore_penrose(a, tol); }

CMatrix reflexive_inverse(const CMatrix& a, const Tolerances& tol) {
  const CMatrix g = inner_inverse(a, tol);
  return g * a * g;
}

std::optional<CMatrix> group_inverse(const CMatrix& a, const Tolerances& tol) {
  if (!a.is_square()) throw DimensionError("group_inverse: non-square " + shape_string(a));
  const double s = densela::norm2(a);
  const std::size_t r1 = densela::rank(a, tol);
  const std::size_t r2 = densela::rank(a * a, tol, s * s);
  if (r2 < r1) return std::nullopt;
  const auto [f, g] = densela::rank_factorization(a, tol);
  if (f.cols() == 0) return CMatrix(a.rows(), a.cols());
  const CMatrix core = g * f;
  return f * densela::solve_square(core, densela::solve_square(core, g));
}

DrazinResult drazin_inverse(const CMatrix& a, const Tolerances& tol) {
  if (!a.is_square()) throw DimensionError("drazin_inverse: non-square " + shape_string(a));
  const std::size_t n = a.rows();

  // Ran(A^j) and Ran((A^H)^j) by repeated images. Each step is ranked against
  // ||A|| alone, so the cutoff does not degrade with j the way rank(A^j) would.
  Subspace ran = Subspace::whole(n);
  Subspace coran = Subspace::whole(n);
  unsigned k = 0;
  for (;; ++k) {
    Subspace next = subspace::image(a, ran, tol);
    if (next.dim() == ran.dim()) break;
    ran = std::move(next);
    coran = subspace::image(a.adjoint(), coran, tol);
  }
  if (coran.dim() != ran.dim()) throw NumericalError("drazin_inverse: Ran(A^k) and Ran((A^H)^k) differ in dimension");

  // With X, W bases of Ran(A^k) and Ker(A^k)^perp, Y = X (W^H A^{2k+1} X)^{-1} W^H
  // is an inner inverse of A^{2k+1}, and A^k Y A^k collapses to X (W^H A X)^{-1} W^H.
  DrazinResult out{CMatrix(n, n), k, {}};
  if (ran.dim() > 0) {
    const CMatrix& x = ran.basis();
    const CMatrix wh = coran.basis().adjoint();
    const CMatrix core = wh * a * x;
    if (densela::rank(core, tol) != core.rows()) throw NumericalError("drazin_inverse: W^H A X is singular");
    out.inverse = x * densela::solve_square(core, wh);
  }
  out.spectral_idempotent = CMatrix::identity(n) - a * out.inverse;

  const CMatrix ak = power(a, k);
  const auto res = drazin_residuals(a, out.inverse, k);
  const double xn = out.inverse.frobenius_norm();
  const double an = a.frobenius_norm();
  const double akn = ak.frobenius_norm();
  const bool ok = tol.small(res.power_identity, std::max(akn * an * xn, akn)) &&
                  tol.small(res.outer, xn * an * xn + xn) && tol.small(res.commute, an * xn);
  if (!ok) {
    throw NumericalError("drazin_inverse: axiom check failed (max residual " + std::to_string(res.max()) +
                         ", index " + std::to_string(k) + ")");
  }
  return out;
}

std::optional<CMatrix> one_five_inverse(const CMatrix& a, const Tolerances& tol) { return group_inverse(a, tol); }

std::pair<CMatrix, CMatrix> gi_idempotents(const CMatrix& a, const Tolerances& tol) {
  const CMatrix plus = moore_penrose(a, tol);
  return {plus * a, a * plus};
}

}  // namespace pqinv::ginv
