#pragma once

// Outer and {1,2} inverses with prescribed idempotents in M_n(C).
//
// For a in M_n(C) and idempotents p, q:
//   outer2    a^{(2)}_{p,q}     bab = b, ba = p, ab = 1 - q
//   outer2l   a^{(2,l)}_{p,q}   bab = b, Ran b = Ran p, Ker b = Ran q
//   one_two_l a^{(l)}_{p,q}     outer2l plus aba = a
//   one_two_strict a^{(1,2)}_{p,q}  outer2 plus aba = a
// Each is unique when it exists. outer2l is computed from any w with
// Ran w = Ran p and Ker w = Ran q, through one of four representations.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pqinv/cmatrix.hpp"
#include "pqinv/densela.hpp"

namespace pqinv {

struct Residuals {
  double outer = 0.0;              ///< ||bab - b||
  double inner = 0.0;              ///< ||aba - a||
  double range_distance = 0.0;     ///< ||P_Ran(b) - P_Ran(p)||_F
  double kernel_distance = 0.0;    ///< ||P_Ker(b) - P_Ran(q)||_F
  double ba_minus_p = 0.0;         ///< ||ba - p||
  double ab_minus_1q = 0.0;        ///< ||ab - (1 - q)||
};

/// The requested inverse provably does not exist; `reason` names the
/// failing condition. Residuals of the rejected candidate are attached when
/// one was computed.
class NonexistenceError : public std::runtime_error {
public:
  explicit NonexistenceError(std::string reason, std::optional<Residuals> residuals = std::nullopt)
      : std::runtime_error("does not exist: " + reason), reason_(std::move(reason)), residuals_(residuals) {}
  const std::string& reason() const noexcept { return reason_; }
  const std::optional<Residuals>& residuals() const noexcept { return residuals_; }

private:
  std::string reason_;
  std::optional<Residuals> residuals_;
};

/// A spectral precondition of the limit or integral representation fails.
class SpectralError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// a, p, q (all n x n) and the tolerances. p and q are checked idempotent.
class PqProblem {
public:
  PqProblem(CMatrix a, CMatrix p, CMatrix q, Tolerances tol = {});

  const CMatrix& a() const noexcept { return a_; }
  const CMatrix& p() const noexcept { return p_; }
  const CMatrix& q() const noexcept { return q_; }
  const Tolerances& tol() const noexcept { return tol_; }
  std::size_t n() const noexcept { return a_.rows(); }
  /// 1 - q
  CMatrix q_complement() const { return CMatrix::identity(n()) - q_; }
  PqProblem with_tolerances(const Tolerances& tol) const { return {a_, p_, q_, tol}; }

private:
  CMatrix a_;
  CMatrix p_;
  CMatrix q_;
  Tolerances tol_;
};

struct ExistenceReport {
  bool ker_cap_ranp_trivial = false;  ///< Ker a ∩ Ran p = {0}
  bool direct_sum = false;            ///< C^n = a Ran p (+) Ran q
  bool image_match = false;           ///< a Ran p = Ran(1 - q)
  bool cond5 = false;                 ///< row(p) ⊆ row(m), Ran(1-q) ⊆ Ran(m), m = (1-q) a p
  struct Witnesses {
    CMatrix s;  ///< (1-q) a p s = 1 - q
    CMatrix t;  ///< t (1-q) a p = p
  };
  std::optional<Witnesses> cond6_witnesses;
  bool strict_exists = false;     ///< a^{(2)}_{p,q}
  bool l_exists = false;          ///< a^{(2,l)}_{p,q}
  bool l12_exists = false;        ///< a^{(l)}_{p,q}
  bool strict12_exists = false;   ///< a^{(1,2)}_{p,q}
  struct Dims {
    std::size_t ran_p = 0;
    std::size_t ran_q = 0;
    std::size_t rank_a = 0;
  } dims;
  /// A boolean flips when rank_rtol is scaled by 10 or 0.1.
  bool fragile = false;
  /// The equivalence l_exists = direct_sum ∧ ker-trivial = cond5 = cond6 and
  /// the one-way implications all hold.
  bool consistent = false;
  Tolerances tol;

  bool cond6() const noexcept { return cond6_witnesses.has_value(); }
};

enum class Kind { outer2, outer2l, one_two_l, one_two_strict };
enum class Route { group_formula, inner_formula, limit, integral, direct };

std::string_view to_string(Kind k) noexcept;
std::string_view to_string(Route r) noexcept;

struct PqResult {
  Kind kind = Kind::outer2l;
  CMatrix b;
  Route route = Route::group_formula;
  Residuals residuals;
};

namespace pq {

ExistenceReport diagnose(const PqProblem& prob);

/// w = U N^H with U an orthonormal basis of Ran p and N one of Ran(q)^⊥, so
/// Ran w = Ran p and Ker w = Ran q. Throws NonexistenceError when
/// dim Ran p + dim Ran q != n.
CMatrix construct_w(const CMatrix& p, const CMatrix& q, const Tolerances& tol = {});

/// Residuals of b against every defining equation of the problem.
Residuals residuals_of(const PqProblem& prob, const CMatrix& b);

PqResult outer_2l(const PqProblem& prob, Route route = Route::group_formula);
/// When `strict_w` (wa = p, aw = 1 - q) is given, (wa)^# w = p w is also
/// checked against the computed inverse.
PqResult outer_2_strict(const PqProblem& prob, const std::optional<CMatrix>& strict_w = std::nullopt);
PqResult one_two_l(const PqProblem& prob);
PqResult one_two_strict(const PqProblem& prob);

/// w (aw)^#, cross-checked against (wa)^# w and against w a w c = w,
/// b a w c = b with c = (aw)^#.
CMatrix repr_group(const CMatrix& a, const CMatrix& w, const Tolerances& tol = {});

/// w (waw)^- w with the canonical inner inverse; cross-checked against
/// repr_group and against the inner-inverse witness x = a ((wa)^#)^2.
CMatrix repr_inner(const CMatrix& a, const CMatrix& w, const Tolerances& tol = {});

struct LimitTrace {
  double lambda;
  double cauchy_difference;  ///< ||X(lambda) - X(previous lambda)||_F
};
struct LimitResult {
  CMatrix b;
  std::vector<LimitTrace> trace;  ///< one row per lambda after the first
};

/// Default schedule 1e-2, 1e-3, ..., 1e-8.
std::vector<double> default_lambda_schedule();

/// w (lambda I + aw)^{-1} along a decreasing positive schedule. Throws
/// SpectralError when some lambda lies within conv_tol of a nonzero point of
/// spec(-aw) (the zero eigenvalues are what lambda -> 0 approaches), and
/// NumericalError when the Cauchy differences do not shrink.
LimitResult repr_limit(const CMatrix& a, const CMatrix& w, const std::vector<double>& lambda_schedule,
                       const Tolerances& tol = {});

struct IntegralResult {
  CMatrix b;
  double tail_bound = 0.0;        ///< bound on the truncated [horizon, inf) part
  double quadrature_error = 0.0;  ///< Romberg error estimate on [0, horizon]
  double horizon = 0.0;
  double decay_rate = 0.0;        ///< min Re of the nonzero spectrum of aw
  std::size_t panels = 0;
};

/// Quadrature of t -> w exp(-aw t) on [0, horizon]. horizon <= 0 picks one
/// from the decay rate; `steps` is the minimum number of panels.
/// Throws SpectralError when a nonzero eigenvalue of aw has Re <= 0 or when
/// Ker(aw) ⊄ Ker(w); NumericalError when the tail bound exceeds conv_tol.
IntegralResult repr_integral(const CMatrix& a, const CMatrix& w, double horizon, std::size_t steps,
                             const Tolerances& tol = {});

/// a^+ as a^{(2)}_{a^+ a, 1 - a a^+}; throws NumericalError on disagreement.
PqResult special_case_mp(const CMatrix& a, const Tolerances& tol = {});
/// a^D as a^{(2)}_{1 - a^pi, a^pi}; throws NumericalError on disagreement.
PqResult special_case_drazin(const CMatrix& a, const Tolerances& tol = {});

}  // namespace pq
}  // namespace pqinv
