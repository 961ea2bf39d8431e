#include "pqinv/densela.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "eigen_bridge.hpp"

namespace pqinv {

void Tolerances::validate() const {
  const auto ok = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!ok(rank_rtol)) throw ValidationError("rank_rtol must be finite and >= 0");
  if (!ok(eq_atol)) throw ValidationError("eq_atol must be finite and >= 0");
  if (!ok(eq_rtol)) throw ValidationError("eq_rtol must be finite and >= 0");
  if (!ok(conv_tol)) throw ValidationError("conv_tol must be finite and >= 0");
}

bool Tolerances::close(const CMatrix& x, const CMatrix& y) const {
  if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
  return small((x - y).frobenius_norm(), std::max(x.frobenius_norm(), y.frobenius_norm()));
}

namespace densela {

using detail::EMatrix;
using detail::from_eigen;
using detail::to_eigen;

CMatrix matmul(const CMatrix& a, const CMatrix& b) { return a * b; }

Svd svd(const CMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m == 0 || n == 0) return {CMatrix::identity(m), {}, CMatrix::identity(n)};
  Eigen::MatrixXcd dense = to_eigen(a);
  Eigen::JacobiSVD<Eigen::MatrixXcd> solver(dense, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Svd out{from_eigen(solver.matrixU()), {}, from_eigen(solver.matrixV())};
  const auto& s = solver.singularValues();
  out.sigma.assign(s.data(), s.data() + s.size());
  return out;
}

std::size_t rank_of_sigma(const std::vector<double>& sigma, double rank_rtol, double scale) {
  if (sigma.empty()) return 0;
  const double ref = std::max(sigma.front(), scale);
  if (ref == 0.0) return 0;
  const double cutoff = rank_rtol * ref;
  return static_cast<std::size_t>(std::count_if(sigma.begin(), sigma.end(), [&](double s) { return s > cutoff; }));
}

std::size_t rank(const CMatrix& a, const Tolerances& tol, double scale) {
  return rank_of_sigma(svd(a).sigma, tol.rank_rtol, scale);
}

std::optional<CMatrix> solve_right(const CMatrix& a, const CMatrix& b, const Tolerances& tol, double scale) {
  if (a.rows() != b.rows())
    throw DimensionError("solve_right: A is " + shape_string(a) + ", B is " + shape_string(b));
  const Svd d = svd(a);
  const std::size_t r = rank_of_sigma(d.sigma, tol.rank_rtol, scale);
  // X = V_r diag(1/sigma) U_r^H B
  CMatrix coeffs = d.u.columns(0, r).adjoint() * b;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < coeffs.cols(); ++j) coeffs(i, j) /= d.sigma[i];
  CMatrix x = d.v.columns(0, r) * coeffs;
  const double residual = (a * x - b).frobenius_norm();
  if (!tol.small(residual, b.frobenius_norm())) return std::nullopt;
  return x;
}

std::optional<CMatrix> solve_left(const CMatrix& a, const CMatrix& b, const Tolerances& tol, double scale) {
  if (a.cols() != b.cols())
    throw DimensionError("solve_left: A is " + shape_string(a) + ", B is " + shape_string(b));
  auto xh = solve_right(a.adjoint(), b.adjoint(), tol, scale);
  if (!xh) return std::nullopt;
  return xh->adjoint();
}

RankFactors rank_factorization(const CMatrix& a, const Tolerances& tol) {
  const Svd d = svd(a);
  const std::size_t r = rank_of_sigma(d.sigma, tol.rank_rtol);
  CMatrix f = d.u.columns(0, r);
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < r; ++j) f(i, j) *= d.sigma[j];
  return {std::move(f), d.v.columns(0, r).adjoint()};
}

std::vector<cplx> eigenvalues(const CMatrix& a) {
  if (!a.is_square()) throw DimensionError("eigenvalues: non-square " + shape_string(a));
  if (a.rows() == 0) return {};
  Eigen::MatrixXcd dense = to_eigen(a);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(dense, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw NumericalError("eigenvalues: QR iteration did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

CMatrix solve_square(const CMatrix& a, const CMatrix& b) {
  if (!a.is_square() || a.rows() != b.rows())
    throw DimensionError("solve_square: A is " + shape_string(a) + ", B is " + shape_string(b));
  if (a.rows() == 0) return CMatrix(0, b.cols());
  Eigen::MatrixXcd lhs = to_eigen(a);
  Eigen::MatrixXcd rhs = to_eigen(b);
  Eigen::MatrixXcd x = Eigen::PartialPivLU<Eigen::MatrixXcd>(lhs).solve(rhs);
  return from_eigen(x);
}

CMatrix inverse(const CMatrix& a, const Tolerances& tol) {
  if (!a.is_square()) throw DimensionError("inverse: non-square " + shape_string(a));
  const Svd d = svd(a);
  if (rank_of_sigma(d.sigma, tol.rank_rtol) < a.rows()) throw ValidationError("inverse: singular matrix");
  return solve_square(a, CMatrix::identity(a.rows()));
}

double norm1(const CMatrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

double norm2(const CMatrix& a) {
  const auto s = svd(a).sigma;
  return s.empty() ? 0.0 : s.front();
}

CMatrix matrix_exp(const CMatrix& a) {
  if (!a.is_square()) throw DimensionError("matrix_exp: non-square " + shape_string(a));
  const std::size_t n = a.rows();
  if (n == 0) return {};

  // Higham (2005) degree-13 coefficients and the matching 1-norm bound.
  constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                          1187353796428800.0,  129060195264000.0,   10559470521600.0,
                          670442572800.0,      33522128640.0,       1323241920.0,
                          40840800.0,          960960.0,            16380.0,
                          182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const double nrm = norm1(a);
  int squarings = 0;
  if (nrm > theta13) squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
  const CMatrix x = std::ldexp(1.0, -squarings) * a;

  const CMatrix id = CMatrix::identity(n);
  const CMatrix x2 = x * x;
  const CMatrix x4 = x2 * x2;
  const CMatrix x6 = x4 * x2;

  const CMatrix u_inner = x6 * (b[13] * x6 + b[11] * x4 + b[9] * x2) + b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * id;
  const CMatrix u = x * u_inner;
  const CMatrix v = x6 * (b[12] * x6 + b[10] * x4 + b[8] * x2) + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;

  CMatrix r = solve_square(v - u, v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

}  // namespace densela
}  // namespace pqinv
