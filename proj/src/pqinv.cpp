#include "pqinv/pqinv.hpp"

#include <array>
#include <cmath>
#include <string>

#include "pqinv/ginv.hpp"
#include "pqinv/subspace.hpp"

namespace pqinv {

using namespace subspace;

PqProblem::PqProblem(CMatrix a, CMatrix p, CMatrix q, Tolerances tol)
    : a_(std::move(a)), p_(std::move(p)), q_(std::move(q)), tol_(tol) {
  tol_.validate();
  if (!a_.is_square()) throw DimensionError("a must be square, got " + shape_string(a_));
  const std::size_t n = a_.rows();
  if (p_.rows() != n || p_.cols() != n) throw DimensionError("p must be " + shape_string(a_) + ", got " + shape_string(p_));
  if (q_.rows() != n || q_.cols() != n) throw DimensionError("q must be " + shape_string(a_) + ", got " + shape_string(q_));
  if (!tol_.close(p_ * p_, p_)) throw ValidationError("p fails p²=p");
  if (!tol_.close(q_ * q_, q_)) throw ValidationError("q fails q²=q");
}

std::string_view to_string(Kind k) noexcept {
  switch (k) {
    case Kind::outer2:
      return "outer2";
    case Kind::outer2l:
      return "outer2l";
    case Kind::one_two_l:
      return "one_two_l";
    case Kind::one_two_strict:
      return "one_two_strict";
  }
  return "unknown";
}

std::string_view to_string(Route r) noexcept {
  switch (r) {
    case Route::group_formula:
      return "group_formula";
    case Route::inner_formula:
      return "inner_formula";
    case Route::limit:
      return "limit";
    case Route::integral:
      return "integral";
    case Route::direct:
      return "direct";
  }
  return "unknown";
}

namespace pq {
namespace {

// Rank scale for (1-q) a p. Idempotent factors count as norm >= 1 so that a
// numerically-zero 1 - q or p does not shrink the cutoff onto roundoff.
double sandwich_scale(const CMatrix& one_q, const CMatrix& a, const CMatrix& p) {
  return std::max(1.0, densela::norm2(one_q)) * densela::norm2(a) * std::max(1.0, densela::norm2(p));
}

// b = w (aw)^# when aw is group invertible and b satisfies the outer2l
// definition; otherwise nullopt. Used as the independent existence test.
std::optional<CMatrix> l_candidate(const PqProblem& prob, const Subspace& ran_p, const Subspace& ran_q) {
  const auto& tol = prob.tol();
  if (ran_p.dim() + ran_q.dim() != prob.n()) return std::nullopt;
  const CMatrix w = construct_w(prob.p(), prob.q(), tol);
  const auto g = ginv::group_inverse(prob.a() * w, tol);
  if (!g) return std::nullopt;
  CMatrix b = w * *g;
  if (!tol.close(b * prob.a() * b, b)) return std::nullopt;
  if (!equals(range_of(b, tol), ran_p, tol) || !equals(kernel_of(b, tol), ran_q, tol)) return std::nullopt;
  return b;
}

ExistenceReport evaluate(const PqProblem& prob) {
  const auto& tol = prob.tol();
  const std::size_t n = prob.n();
  const CMatrix& a = prob.a();
  const CMatrix& p = prob.p();
  const CMatrix one_q = prob.q_complement();
  const CMatrix one_p = CMatrix::identity(n) - p;

  ExistenceReport r;
  r.tol = tol;
  // A nonzero idempotent has every nonzero singular value >= 1, so its
  // rank cutoff is absolute; a relative one would count roundoff in a
  // numerically-zero 1 - q as full rank.
  const Subspace ran_p = range_of(p, tol, 1.0);
  const Subspace ran_q = range_of(prob.q(), tol, 1.0);
  const Subspace ran_1q = range_of(one_q, tol, 1.0);
  const Subspace ker_a = kernel_of(a, tol);
  const Subspace ran_a = range_of(a, tol);
  r.dims = {ran_p.dim(), ran_q.dim(), ran_a.dim()};

  r.ker_cap_ranp_trivial = intersect(ker_a, ran_p, tol).dim() == 0;
  const Subspace a_ran_p = image(a, ran_p, tol);
  r.direct_sum = is_direct_sum_all(a_ran_p, ran_q, tol);
  r.image_match = equals(a_ran_p, ran_1q, tol);

  const CMatrix m = one_q * a * p;
  const double m_scale = sandwich_scale(one_q, a, p);
  r.cond5 = contains(range_of(m.adjoint(), tol, m_scale), range_of(p.adjoint(), tol, 1.0), tol) &&
            contains(range_of(m, tol, m_scale), ran_1q, tol);
  auto s = densela::solve_right(m, one_q, tol, m_scale);
  auto t = densela::solve_left(m, p, tol, m_scale);
  if (s && t) r.cond6_witnesses = ExistenceReport::Witnesses{std::move(*s), std::move(*t)};

  const auto b = l_candidate(prob, ran_p, ran_q);
  r.l_exists = b.has_value();
  r.strict_exists = b && tol.close(*b * a, p) && tol.close(a * *b, one_q);

  r.l12_exists = is_direct_sum_all(ran_a, ran_q, tol) && is_direct_sum_all(ker_a, ran_p, tol);
  r.strict12_exists = r.l12_exists && equals(ran_a, ran_1q, tol) && equals(ker_a, range_of(one_p, tol, 1.0), tol);

  const bool theorem = r.l_exists == (r.direct_sum && r.ker_cap_ranp_trivial) && r.l_exists == r.cond5 &&
                       r.l_exists == r.cond6();
  const bool implications = (!r.strict_exists || r.l_exists) && (!r.strict_exists || r.image_match) &&
                            (!r.image_match || r.direct_sum) && (!r.l12_exists || r.l_exists) &&
                            (!r.strict12_exists || (r.strict_exists && r.l12_exists));
  r.consistent = theorem && implications;
  return r;
}

std::array<bool, 9> verdicts(const ExistenceReport& r) {
  return {r.ker_cap_ranp_trivial, r.direct_sum, r.image_match, r.cond5,          r.cond6(),
          r.strict_exists,        r.l_exists,   r.l12_exists,  r.strict12_exists};
}

void require_l_conditions(const PqProblem& prob, const Subspace& ran_p, const Subspace& ran_q) {
  const auto& tol = prob.tol();
  if (ran_p.dim() + ran_q.dim() != prob.n()) {
    throw NonexistenceError("dim Ran(p) + dim Ran(q) = " + std::to_string(ran_p.dim() + ran_q.dim()) +
                            " ≠ n = " + std::to_string(prob.n()));
  }
  if (intersect(kernel_of(prob.a(), tol), ran_p, tol).dim() != 0) throw NonexistenceError("Ker(a) ∩ Ran(p) ≠ {0}");
  if (!is_direct_sum_all(image(prob.a(), ran_p, tol), ran_q, tol))
    throw NonexistenceError("C^n ≠ a·Ran(p) ∔ Ran(q)");
}

void require_l12_conditions(const PqProblem& prob) {
  const auto& tol = prob.tol();
  if (!is_direct_sum_all(kernel_of(prob.a(), tol), range_of(prob.p(), tol, 1.0), tol))
    throw NonexistenceError("C^n ≠ Ker(a) ∔ Ran(p)");
  if (!is_direct_sum_all(range_of(prob.a(), tol), range_of(prob.q(), tol, 1.0), tol))
    throw NonexistenceError("C^n ≠ Ran(a) ∔ Ran(q)");
}

}  // namespace

ExistenceReport diagnose(const PqProblem& prob) {
  ExistenceReport report = evaluate(prob);
  const auto base = verdicts(report);
  for (const double factor : {10.0, 0.1}) {
    Tolerances shifted = prob.tol();
    shifted.rank_rtol *= factor;
    if (verdicts(evaluate(prob.with_tolerances(shifted))) != base) report.fragile = true;
  }
  return report;
}

CMatrix construct_w(const CMatrix& p, const CMatrix& q, const Tolerances& tol) {
  if (!p.is_square() || p.rows() != q.rows() || !q.is_square())
    throw DimensionError("construct_w: p is " + shape_string(p) + ", q is " + shape_string(q));
  const Subspace ran_p = range_of(p, tol, 1.0);
  const Subspace ran_q = range_of(q, tol, 1.0);
  if (ran_p.dim() + ran_q.dim() != p.rows()) {
    throw NonexistenceError("dim Ran(p) + dim Ran(q) = " + std::to_string(ran_p.dim() + ran_q.dim()) +
                            " ≠ n = " + std::to_string(p.rows()));
  }
  const Subspace coimage = orthogonal_complement(ran_q, tol);
  return ran_p.basis() * coimage.basis().adjoint();
}

Residuals residuals_of(const PqProblem& prob, const CMatrix& b) {
  const auto& tol = prob.tol();
  const CMatrix& a = prob.a();
  const CMatrix ab = a * b;
  const CMatrix ba = b * a;
  Residuals r;
  r.outer = (ba * b - b).frobenius_norm();
  r.inner = (ab * a - a).frobenius_norm();
  r.range_distance = distance(range_of(b, tol), range_of(prob.p(), tol, 1.0));
  r.kernel_distance = distance(kernel_of(b, tol), range_of(prob.q(), tol, 1.0));
  r.ba_minus_p = (ba - prob.p()).frobenius_norm();
  r.ab_minus_1q = (ab - prob.q_complement()).frobenius_norm();
  return r;
}

PqResult outer_2l(const PqProblem& prob, Route route) {
  const auto& tol = prob.tol();
  const CMatrix& a = prob.a();
  const Subspace ran_p = range_of(prob.p(), tol, 1.0);
  const Subspace ran_q = range_of(prob.q(), tol, 1.0);
  require_l_conditions(prob, ran_p, ran_q);

  const CMatrix w = construct_w(prob.p(), prob.q(), tol);
  CMatrix b;
  switch (route) {
    case Route::group_formula:
      b = repr_group(a, w, tol);
      break;
    case Route::inner_formula:
      b = repr_inner(a, w, tol);
      break;
    case Route::limit:
      b = repr_limit(a, w, default_lambda_schedule(), tol).b;
      break;
    case Route::integral:
      b = repr_integral(a, w, 0.0, 1, tol).b;
      break;
    case Route::direct: {
      // b = p s where (1-q) a p s = 1 - q
      const CMatrix one_q = prob.q_complement();
      const CMatrix m = one_q * a * prob.p();
      const auto s = densela::solve_right(m, one_q, tol, sandwich_scale(one_q, a, prob.p()));
      if (!s) throw NumericalError("outer_2l: (1-q)ap s = 1-q has no solution although the inverse exists");
      b = prob.p() * *s;
      break;
    }
  }

  PqResult out{Kind::outer2l, std::move(b), route, {}};
  out.residuals = residuals_of(prob, out.b);
  const bool ok = tol.small(out.residuals.outer, out.b.frobenius_norm()) &&
                  equals(range_of(out.b, tol), ran_p, tol) && equals(kernel_of(out.b, tol), ran_q, tol);
  if (!ok) {
    throw NumericalError("outer_2l: computed b fails bab=b or its range/kernel conditions (route " +
                         std::string(to_string(route)) + ")");
  }
  return out;
}

PqResult outer_2_strict(const PqProblem& prob, const std::optional<CMatrix>& strict_w) {
  const auto& tol = prob.tol();
  PqResult out = outer_2l(prob);
  const CMatrix& a = prob.a();
  if (!tol.close(out.b * a, prob.p())) throw NonexistenceError("ba ≠ p", out.residuals);
  if (!tol.close(a * out.b, prob.q_complement())) throw NonexistenceError("ab ≠ 1-q", out.residuals);
  out.kind = Kind::outer2;

  if (strict_w) {
    const CMatrix& w = *strict_w;
    if (!tol.close(w * a, prob.p()) || !tol.close(a * w, prob.q_complement()))
      throw ValidationError("outer_2_strict: supplied w does not satisfy wa = p, aw = 1-q");
    const auto g = ginv::group_inverse(w * a, tol);
    if (!g || !tol.close(*g * w, out.b))
      throw NumericalError("outer_2_strict: (wa)^# w disagrees with the computed inverse");
  }
  return out;
}

PqResult one_two_l(const PqProblem& prob) {
  require_l12_conditions(prob);
  PqResult out = outer_2l(prob);
  if (!prob.tol().small(out.residuals.inner, prob.a().frobenius_norm()))
    throw NumericalError("one_two_l: aba ≠ a for the computed inverse");
  out.kind = Kind::one_two_l;
  return out;
}

PqResult one_two_strict(const PqProblem& prob) {
  const auto& tol = prob.tol();
  require_l12_conditions(prob);
  const CMatrix& a = prob.a();
  if (!equals(range_of(a, tol), range_of(prob.q_complement(), tol, 1.0), tol)) throw NonexistenceError("Ran(a) ≠ Ran(1-q)");
  if (!equals(kernel_of(a, tol), range_of(CMatrix::identity(prob.n()) - prob.p(), tol, 1.0), tol))
    throw NonexistenceError("Ker(a) ≠ Ran(1-p)");
  PqResult out = one_two_l(prob);
  if (!tol.close(out.b * a, prob.p()) || !tol.close(a * out.b, prob.q_complement()))
    throw NumericalError("one_two_strict: ba = p or ab = 1-q fails for the computed inverse");
  out.kind = Kind::one_two_strict;
  return out;
}

PqResult special_case_mp(const CMatrix& a, const Tolerances& tol) {
  if (!a.is_square()) throw DimensionError("special_case_mp: non-square " + shape_string(a));
  const CMatrix plus = ginv::moore_penrose(a, tol);
  const PqProblem prob(a, plus * a, CMatrix::identity(a.rows()) - a * plus, tol);
  PqResult out = outer_2_strict(prob);
  if (!tol.close(out.b, plus)) throw NumericalError("special_case_mp: a^{(2)}_{p,q} differs from a^+");
  return out;
}

PqResult special_case_drazin(const CMatrix& a, const Tolerances& tol) {
  if (!a.is_square()) throw DimensionError("special_case_drazin: non-square " + shape_string(a));
  const auto d = ginv::drazin_inverse(a, tol);
  const PqProblem prob(a, CMatrix::identity(a.rows()) - d.spectral_idempotent, d.spectral_idempotent, tol);
  PqResult out = outer_2_strict(prob);
  if (!tol.close(out.b, d.inverse)) throw NumericalError("special_case_drazin: a^{(2)}_{p,q} differs from a^D");
  return out;
}

}  // namespace pq
}  // namespace pqinv
