#include "pqinv/random.hpp"

#include <cmath>
#include <numbers>

#include "pqinv/densela.hpp"

namespace pqinv::gen {

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform_real(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

CMatrix gaussian(Rng& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> dist(0.0, std::sqrt(0.5));
  CMatrix m(rows, cols);
  for (auto& z : m.data()) {
    const double re = dist(rng);
    const double im = dist(rng);
    z = {re, im};
  }
  return m;
}

CMatrix orthonormal(Rng& rng, std::size_t rows, std::size_t cols) {
  if (cols > rows) throw DimensionError("orthonormal: more columns than rows");
  if (cols == 0) return CMatrix(rows, 0);
  return densela::svd(gaussian(rng, rows, cols)).u.columns(0, cols);
}

CMatrix well_conditioned(Rng& rng, std::size_t n, double cond) {
  if (n == 0) return {};
  const CMatrix u = orthonormal(rng, n, n);
  const CMatrix v = orthonormal(rng, n, n);
  std::vector<cplx> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    s[i] = std::pow(cond, t);
  }
  return u * CMatrix::diag(s) * v.adjoint();
}

CMatrix with_rank(Rng& rng, std::size_t rows, std::size_t cols, std::size_t r) {
  return gaussian(rng, rows, r) * gaussian(rng, r, cols);
}

CMatrix idempotent(Rng& rng, std::size_t n, std::size_t r, double cond) {
  const CMatrix s = well_conditioned(rng, n, cond);
  std::vector<cplx> d(n, 0.0);
  for (std::size_t i = 0; i < r; ++i) d[i] = 1.0;
  return s * CMatrix::diag(d) * densela::inverse(s);
}

CMatrix idempotent_with(const CMatrix& range_basis, const CMatrix& kernel_basis) {
  const std::size_t n = range_basis.rows();
  if (range_basis.cols() + kernel_basis.cols() != n || kernel_basis.rows() != n)
    throw DimensionError("idempotent_with: bases do not fill C^n");
  const CMatrix s = hcat(range_basis, kernel_basis);
  std::vector<cplx> d(n, 0.0);
  for (std::size_t i = 0; i < range_basis.cols(); ++i) d[i] = 1.0;
  return s * CMatrix::diag(d) * densela::inverse(s);
}

CMatrix with_index(Rng& rng, std::size_t n, unsigned index) {
  if (index > n) throw DimensionError("with_index: index exceeds dimension");
  const std::size_t nil = index == 0 ? 0 : uniform_index(rng, index, n);
  const std::size_t core = n - nil;
  CMatrix block(n, n);
  if (core > 0) {
    const CMatrix c = well_conditioned(rng, core, 10.0);
    for (std::size_t i = 0; i < core; ++i)
      for (std::size_t j = 0; j < core; ++j) block(i, j) = c(i, j);
  }
  // one Jordan block of size `index`, then 1x1 or 2x2 blocks no larger
  std::size_t pos = core;
  std::size_t size = index;
  while (pos < n) {
    const std::size_t len = std::min(size, n - pos);
    for (std::size_t i = 0; i + 1 < len; ++i) block(pos + i, pos + i + 1) = 1.0;
    pos += len;
    size = std::max<std::size_t>(1, std::min<std::size_t>(index, uniform_index(rng, 1, 2)));
  }
  const CMatrix s = well_conditioned(rng, n, 10.0);
  return s * block * densela::inverse(s);
}

namespace {

// Orthonormal basis of span(basis)^⊥.
CMatrix complement(const CMatrix& basis) {
  const std::size_t n = basis.rows();
  const std::size_t r = basis.cols();
  if (r == 0) return CMatrix::identity(n);
  return densela::svd(basis).u.columns(r, n - r);
}

}  // namespace

Constructed constructed(Rng& rng, std::size_t n, std::size_t r, bool positive) {
  if (r > n) throw DimensionError("constructed: rank exceeds dimension");
  Constructed out;
  const CMatrix u = orthonormal(rng, n, r);
  const CMatrix nb = orthonormal(rng, n, r);

  std::vector<cplx> eig(r);
  for (auto& z : eig) {
    if (positive) {
      z = {uniform_real(rng, 0.5, 2.0), uniform_real(rng, -1.0, 1.0)};
    } else {
      z = std::polar(uniform_real(rng, 0.5, 2.0), uniform_real(rng, 0.0, 2.0 * std::numbers::pi));
    }
  }
  CMatrix core(r, r);
  if (r > 0) {
    const CMatrix s = well_conditioned(rng, r, 3.0);
    core = s * CMatrix::diag(eig) * densela::inverse(s);
  }

  const CMatrix noise = (0.3 / std::sqrt(static_cast<double>(n))) * gaussian(rng, n, n);
  out.a = nb * core * u.adjoint() + noise - nb * (nb.adjoint() * noise * u) * u.adjoint();

  // p: range span(U), kernel tilted off U^⊥; q: range span(N)^⊥, kernel tilted off N.
  const CMatrix u_perp = complement(u);
  const CMatrix n_perp = complement(nb);
  const double tilt_p = uniform_index(rng, 0, 1) == 0 ? 0.0 : 0.5;
  const double tilt_q = uniform_index(rng, 0, 1) == 0 ? 0.0 : 0.5;
  const CMatrix p_kernel = u_perp + tilt_p * (u * gaussian(rng, r, n - r));
  const CMatrix q_kernel = nb + tilt_q * (n_perp * gaussian(rng, n - r, r));
  out.p = idempotent_with(u, p_kernel);
  out.q = idempotent_with(n_perp, q_kernel);
  out.range_basis = u;
  out.coimage_basis = nb;
  out.positive_core = positive;
  return out;
}

Triple unconstrained(Rng& rng, std::size_t n) {
  Triple t;
  t.a = with_rank(rng, n, n, uniform_index(rng, 0, n));
  const std::size_t rp = uniform_index(rng, 0, n);
  const std::size_t rq = uniform_index(rng, 0, 1) == 0 ? n - rp : uniform_index(rng, 0, n);
  t.p = idempotent(rng, n, rp);
  t.q = idempotent(rng, n, rq);
  return t;
}

}  // namespace pqinv::gen
