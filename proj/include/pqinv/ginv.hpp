#pragma once

#include <optional>
#include <utility>

#include "pqinv/cmatrix.hpp"
#include "pqinv/densela.hpp"

namespace pqinv::ginv {

/// a^D together with its index and spectral idempotent a^pi = I - a a^D.
struct DrazinResult {
  CMatrix inverse;
  unsigned index = 0;
  CMatrix spectral_idempotent;
};

/// Canonical {1}-inverse: the Moore-Penrose inverse.
CMatrix inner_inverse(const CMatrix& a, const Tolerances& tol = {});

/// G A G for the canonical inner inverse G.
CMatrix reflexive_inverse(const CMatrix& a, const Tolerances& tol = {});

CMatrix moore_penrose(const CMatrix& a, const Tolerances& tol = {});

/// A^# = F (G F)^{-2} G from A = F G, when rank(A) = rank(A^2).
std::optional<CMatrix> group_inverse(const CMatrix& a, const Tolerances& tol = {});

/// Index k is the least k with rank(A^k) = rank(A^{k+1});
/// A^D = A^k Y A^k for the inner inverse Y of A^{2k+1} built on the
/// core/nilpotent splitting Ran(A^k) (+) Ker(A^k), checked against the
/// three Drazin axioms.
/// Throws NumericalError if the axioms fail at tolerance.
DrazinResult drazin_inverse(const CMatrix& a, const Tolerances& tol = {});

/// An x with A x A = A and A x = x A. Returns A^# (the canonical member),
/// which exists exactly when such an x does.
std::optional<CMatrix> one_five_inverse(const CMatrix& a, const Tolerances& tol = {});

/// (p, q) = (A^+ A, A A^+): Ker p = Ker A, Ran q = Ran A.
std::pair<CMatrix, CMatrix> gi_idempotents(const CMatrix& a, const Tolerances& tol = {});

/// Residuals of the four Penrose equations for a candidate x.
struct PenroseResiduals {
  double axa_minus_a;
  double xax_minus_x;
  double ax_hermitian;
  double xa_hermitian;
  double max() const;
};
PenroseResiduals penrose_residuals(const CMatrix& a, const CMatrix& x);

/// Residuals of a^{k+1} x = a^k, x a x = x, a x = x a.
struct DrazinResiduals {
  double power_identity;
  double outer;
  double commute;
  double max() const;
};
DrazinResiduals drazin_residuals(const CMatrix& a, const CMatrix& x, unsigned index);

}  // namespace pqinv::ginv
