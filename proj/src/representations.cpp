// Four representations of a^{(2,l)}_{p,q} through any w with Ran w = Ran p,
// Ker w = Ran q: the group-inverse formula, the inner-inverse formula, the
// resolvent limit and the exponential integral.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "pqinv/ginv.hpp"
#include "pqinv/pqinv.hpp"
#include "pqinv/subspace.hpp"

namespace pqinv::pq {
namespace {

void require_square_pair(const CMatrix& a, const CMatrix& w, const char* who) {
  if (!a.is_square() || a.rows() != w.rows() || !w.is_square())
    throw DimensionError(std::string(who) + ": a is " + shape_string(a) + ", w is " + shape_string(w));
}

// Eigenvalues of aw with the n - rank(aw) smallest-magnitude ones removed.
// For group-invertible aw these are exactly the zero eigenvalues.
std::vector<cplx> nonzero_spectrum(const CMatrix& aw, const CMatrix& a, const CMatrix& w, const Tolerances& tol) {
  auto ev = densela::eigenvalues(aw);
  const std::size_t r = densela::rank(aw, tol, densela::norm2(a) * densela::norm2(w));
  std::sort(ev.begin(), ev.end(), [](cplx x, cplx y) { return std::abs(x) > std::abs(y); });
  ev.resize(r);
  return ev;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

CMatrix repr_group(const CMatrix& a, const CMatrix& w, const Tolerances& tol) {
  require_square_pair(a, w, "repr_group");
  using namespace subspace;
  if (intersect(kernel_of(a, tol), range_of(w, tol), tol).dim() != 0) throw NonexistenceError("Ker(a) ∩ Ran(w) ≠ {0}");
  const CMatrix aw = a * w;
  const CMatrix wa = w * a;
  const auto c = ginv::group_inverse(aw, tol);
  if (!c) throw NonexistenceError("aw has no group inverse");
  const auto d = ginv::group_inverse(wa, tol);
  if (!d) throw NonexistenceError("wa has no group inverse");

  CMatrix b = w * *c;
  if (!tol.close(*d * w, b)) throw NumericalError("repr_group: (wa)^# w and w (aw)^# disagree");
  if (!tol.close(w * aw * *c, w)) throw NumericalError("repr_group: w a w c ≠ w for c = (aw)^#");
  if (!tol.close(b * aw * *c, b)) throw NumericalError("repr_group: b a w c ≠ b for c = (aw)^#");
  return b;
}

CMatrix repr_inner(const CMatrix& a, const CMatrix& w, const Tolerances& tol) {
  require_square_pair(a, w, "repr_inner");
  const CMatrix waw = w * a * w;
  const CMatrix b = w * ginv::inner_inverse(waw, tol) * w;

  const CMatrix reference = repr_group(a, w, tol);
  if (!tol.close(b, reference)) throw NumericalError("repr_inner: w (waw)^- w disagrees with w (aw)^#");

  // x = a ((wa)^#)^2 is an inner inverse of waw.
  const auto g = ginv::group_inverse(w * a, tol);
  if (!g) throw NonexistenceError("wa has no group inverse");
  const CMatrix x = a * *g * *g;
  if (!tol.close(waw * x * waw, waw)) throw NumericalError("repr_inner: a ((wa)^#)^2 is not an inner inverse of waw");
  return b;
}

std::vector<double> default_lambda_schedule() { return {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8}; }

LimitResult repr_limit(const CMatrix& a, const CMatrix& w, const std::vector<double>& lambda_schedule,
                       const Tolerances& tol) {
  require_square_pair(a, w, "repr_limit");
  if (lambda_schedule.empty()) throw ValidationError("repr_limit: empty lambda schedule");
  for (std::size_t i = 0; i < lambda_schedule.size(); ++i) {
    if (!(lambda_schedule[i] > 0.0) || !std::isfinite(lambda_schedule[i]))
      throw ValidationError("repr_limit: lambda must be positive and finite");
    if (i > 0 && !(lambda_schedule[i] < lambda_schedule[i - 1]))
      throw ValidationError("repr_limit: lambda schedule must be strictly decreasing");
  }

  const std::size_t n = a.rows();
  const CMatrix aw = a * w;
  const auto spectrum = nonzero_spectrum(aw, a, w, tol);
  for (const double lambda : lambda_schedule) {
    for (const cplx mu : spectrum) {
      // lambda must avoid spec(-aw) = -spec(aw)
      if (std::abs(cplx(lambda) + mu) <= tol.conv_tol)
        throw SpectralError("repr_limit: lambda = " + fmt(lambda) + " lies within conv_tol of spec(-aw)");
    }
  }

  LimitResult out;
  CMatrix previous;
  for (std::size_t i = 0; i < lambda_schedule.size(); ++i) {
    const double lambda = lambda_schedule[i];
    CMatrix shifted = aw;
    for (std::size_t k = 0; k < n; ++k) shifted(k, k) += lambda;
    // X (lambda + aw) = w  <=>  (lambda + aw)^H X^H = w^H
    CMatrix x = densela::solve_square(shifted.adjoint(), w.adjoint()).adjoint();
    if (!x.all_finite()) throw NumericalError("repr_limit: resolvent overflow at lambda = " + fmt(lambda));
    if (i > 0) out.trace.push_back({lambda, (x - previous).frobenius_norm()});
    previous = std::move(x);
  }
  if (out.trace.size() >= 2 && !(out.trace.back().cauchy_difference < out.trace.front().cauchy_difference) &&
      out.trace.back().cauchy_difference > tol.conv_tol) {
    throw NumericalError("repr_limit: Cauchy differences are not shrinking");
  }
  out.b = std::move(previous);
  return out;
}

IntegralResult repr_integral(const CMatrix& a, const CMatrix& w, double horizon, std::size_t steps,
                             const Tolerances& tol) {
  require_square_pair(a, w, "repr_integral");
  const std::size_t n = a.rows();
  const CMatrix m = a * w;
  IntegralResult out;

  const auto spectrum = nonzero_spectrum(m, a, w, tol);
  if (spectrum.empty()) {
    // aw = 0: the integrand is the constant w, which must vanish.
    if (!tol.small(w.frobenius_norm(), 0.0)) throw SpectralError("repr_integral: aw = 0 but w ≠ 0");
    out.b = CMatrix(n, n);
    return out;
  }
  double alpha = std::numeric_limits<double>::infinity();
  for (const cplx mu : spectrum) {
    if (mu.real() <= tol.conv_tol * std::max(1.0, std::abs(mu))) {
      throw SpectralError("repr_integral: eigenvalue " + fmt(mu.real()) + (mu.imag() < 0 ? "" : "+") + fmt(mu.imag()) +
                          "i of aw has no positive real part");
    }
    alpha = std::min(alpha, mu.real());
  }
  if (!subspace::contains(subspace::kernel_of(w, tol), subspace::kernel_of(m, tol, densela::norm2(a) * densela::norm2(w)), tol))
    throw SpectralError("repr_integral: Ker(aw) is not contained in Ker(w)");
  out.decay_rate = alpha;

  const double target = tol.conv_tol > 0.0 ? tol.conv_tol : std::numeric_limits<double>::epsilon();
  const auto tail_at = [&](double t) { return (w * densela::matrix_exp(-t * m)).frobenius_norm() / alpha; };
  if (horizon <= 0.0) {
    horizon = std::log(1.0 / target) / alpha;
    const double cap = 64.0 * horizon;
    while (tail_at(horizon) > target && horizon < cap) horizon *= 1.5;
  }
  out.horizon = horizon;
  out.tail_bound = tail_at(horizon);
  if (out.tail_bound > target)
    throw NumericalError("repr_integral: tail bound " + fmt(out.tail_bound) + " exceeds conv_tol at horizon " + fmt(horizon));

  // Panels short enough that ||m h||_1 <= 1.
  const double mnorm = densela::norm1(m);
  const auto needed = static_cast<std::size_t>(std::ceil(horizon * mnorm));
  const std::size_t panels = std::max({steps, needed, std::size_t{1}});
  const double h = horizon / static_cast<double>(panels);
  out.panels = panels;

  // Romberg on J = int_0^h exp(-m s) ds from trapezoid sums at 2^j subintervals.
  constexpr int kMaxLevels = 12;
  std::vector<std::vector<CMatrix>> table;
  const CMatrix id = CMatrix::identity(n);
  double j_error = std::numeric_limits<double>::infinity();
  for (int level = 0; level < kMaxLevels; ++level) {
    const std::size_t pieces = std::size_t{1} << level;
    const double delta = h / static_cast<double>(pieces);
    const CMatrix step = densela::matrix_exp(-delta * m);
    CMatrix node = id;
    CMatrix trap = 0.5 * id;
    for (std::size_t k = 1; k <= pieces; ++k) {
      node = node * step;
      trap += (k == pieces ? 0.5 : 1.0) * node;
    }
    std::vector<CMatrix> row{delta * trap};
    for (int k = 1; k <= level; ++k) {
      const double factor = std::pow(4.0, k) - 1.0;
      row.push_back(row[k - 1] + (1.0 / factor) * (row[k - 1] - table[level - 1][k - 1]));
    }
    table.push_back(std::move(row));
    if (level > 0) {
      const CMatrix& best = table[level][level];
      j_error = (best - table[level - 1][level - 1]).frobenius_norm();
      if (j_error <= 1e-15 * std::max(1.0, best.frobenius_norm()) * 10.0) break;
    }
  }
  const CMatrix& panel_integral = table.back().back();

  // int_0^H = sum_k exp(-m k h) J
  const CMatrix panel_step = densela::matrix_exp(-h * m);
  CMatrix power_k = id;
  CMatrix geometric = id;
  for (std::size_t k = 1; k < panels; ++k) {
    power_k = power_k * panel_step;
    geometric += power_k;
  }
  out.b = w * geometric * panel_integral;
  out.quadrature_error = static_cast<double>(panels) * w.frobenius_norm() * j_error;
  return out;
}

}  // namespace pqinv::pq
