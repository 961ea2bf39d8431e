#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracle.hpp"
#include "pqinv/densela.hpp"
#include "pqinv/random.hpp"

using namespace pqinv;
using oracle::dist;

namespace {

const CMatrix kA = CMatrix::from_rows({{0, 0}, {1, 0}});
const CMatrix kP = CMatrix::from_rows({{1, 1}, {0, 0}});
const CMatrix kB = CMatrix::from_rows({{0, 1}, {0, 0}});

bool same_multiset(std::vector<cplx> got, std::vector<cplx> want, double tol) {
  if (got.size() != want.size()) return false;
  for (const cplx w : want) {
    auto it = std::min_element(got.begin(), got.end(),
                               [&](cplx x, cplx y) { return std::abs(x - w) < std::abs(y - w); });
    if (std::abs(*it - w) > tol) return false;
    got.erase(it);
  }
  return true;
}

}  // namespace

TEST_CASE("CMatrix construction validates shape and finiteness") {
  CHECK_THROWS_AS(CMatrix(2, 2, std::vector<cplx>(3)), DimensionError);
  CHECK_THROWS_AS(CMatrix(1, 1, {cplx(std::numeric_limits<double>::quiet_NaN(), 0)}), ValidationError);
  CHECK_THROWS_AS(CMatrix(1, 1, {cplx(0, std::numeric_limits<double>::infinity())}), ValidationError);
  CHECK_THROWS_AS(CMatrix(2, 3) * CMatrix(2, 3), DimensionError);
  const CMatrix z(3, 0);
  CHECK(z.rows() == 3);
  CHECK(z.empty());
  CHECK((z * CMatrix(0, 2)) == CMatrix(3, 2));
}

TEST_CASE("matmul examples") {
  CHECK((CMatrix::identity(2) * kA) == kA);
  CHECK((kB * kA) == CMatrix::diag({1, 0}));
  // (1-q) a p with the counterexample data, multiplied out by hand
  const CMatrix one_q = CMatrix::from_rows({{0, 1}, {0, 1}});
  CHECK((one_q * kA * kP) == CMatrix::from_rows({{1, 1}, {1, 1}}));
  CHECK(densela::matmul(kB, kA) == kB * kA);
}

TEST_CASE("matmul is associative to rounding") {
  gen::Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const auto n = gen::uniform_index(rng, 1, 9);
    const CMatrix x = gen::gaussian(rng, n, n), y = gen::gaussian(rng, n, n), z = gen::gaussian(rng, n, n);
    const CMatrix left = (x * y) * z;
    CHECK(dist(left, x * (y * z)) <= 1e-12 * left.frobenius_norm());
  }
}

TEST_CASE("solve_right examples") {
  const CMatrix b = CMatrix::from_rows({{1, 2}, {3, cplx(0, 4)}});
  const auto x = densela::solve_right(CMatrix::identity(2), b);
  REQUIRE(x);
  CHECK(dist(*x, b) <= 1e-14);

  // the s witness of the solvability condition for the counterexample data
  const CMatrix ones = CMatrix::from_rows({{1, 1}, {1, 1}});
  const CMatrix rhs = CMatrix::from_rows({{0, 1}, {0, 1}});
  const auto s = densela::solve_right(ones, rhs);
  REQUIRE(s);
  CHECK(dist(ones * *s, rhs) <= 1e-12);
  CHECK(dist(ones * CMatrix::from_rows({{0, 1}, {0, 0}}), rhs) == 0.0);

  CHECK_FALSE(densela::solve_right(kB, CMatrix::identity(2)));
  CHECK_THROWS_AS(densela::solve_right(kB, CMatrix(3, 1)), DimensionError);
}

TEST_CASE("solve_right returns only consistent solutions") {
  gen::Rng rng(8);
  const Tolerances tol;
  for (int t = 0; t < 40; ++t) {
    const auto n = gen::uniform_index(rng, 1, 7);
    const auto r = gen::uniform_index(rng, 0, n);
    const CMatrix a = gen::with_rank(rng, n, n, r);
    const CMatrix b = t % 2 == 0 ? a * gen::gaussian(rng, n, 2) : gen::gaussian(rng, n, 2);
    const auto x = densela::solve_right(a, b, tol);
    if (t % 2 == 0) REQUIRE(x);
    if (x) CHECK((a * *x - b).frobenius_norm() <= tol.eq_atol + tol.eq_rtol * b.frobenius_norm());
    if (t % 2 == 1 && r < n) CHECK_FALSE(x);
  }
  const auto left = densela::solve_left(kA, kP);
  CHECK_FALSE(left);  // row(p) is not inside row(a)
}

TEST_CASE("rank examples") {
  CHECK(densela::rank(CMatrix::diag({2, 0})) == 1);
  CHECK(densela::rank(kP) == 1);
  CHECK(densela::rank(CMatrix::identity(5)) == 5);
  CHECK(densela::rank(CMatrix(3, 3)) == 0);
}

TEST_CASE("rank factorization") {
  const auto id = densela::rank_factorization(CMatrix::identity(2));
  CHECK(id.rank() == 2);
  CHECK(dist(id.f * id.g, CMatrix::identity(2)) <= 1e-14);
  const auto p = densela::rank_factorization(kP);
  CHECK(p.rank() == 1);
  CHECK(dist(p.f * p.g, kP) <= 1e-14);
  const auto z = densela::rank_factorization(CMatrix(2, 2));
  CHECK(z.rank() == 0);
  CHECK(z.f.cols() == 0);
  CHECK(z.g.rows() == 0);

  gen::Rng rng(13);
  for (int t = 0; t < 30; ++t) {
    const auto n = gen::uniform_index(rng, 1, 8);
    const auto r = gen::uniform_index(rng, 0, n);
    const CMatrix a = gen::with_rank(rng, n, n, r);
    const auto fg = densela::rank_factorization(a);
    CHECK(fg.rank() == r);
    CHECK(densela::rank(a.adjoint()) == r);
    CHECK(densela::rank(fg.f) == r);
    CHECK(densela::rank(fg.g) == r);
    CHECK(dist(fg.f * fg.g, a) <= 1e-10 * std::max(1.0, a.frobenius_norm()));
  }
}

TEST_CASE("eigenvalue examples") {
  CHECK(same_multiset(densela::eigenvalues(CMatrix::diag({2, 0})), {2, 0}, 1e-12));
  CHECK(same_multiset(densela::eigenvalues(kB), {0, 0}, 1e-7));
  CHECK(same_multiset(densela::eigenvalues(CMatrix::from_rows({{0, 1}, {1, 0}})), {1, -1}, 1e-12));
  CHECK(same_multiset(densela::eigenvalues(CMatrix::from_rows({{0, 1}, {-1, 0}})), {cplx(0, 1), cplx(0, -1)}, 1e-12));
}

TEST_CASE("eigenvalues reproduce trace and determinant") {
  gen::Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    const auto n = gen::uniform_index(rng, 1, 8);
    const CMatrix a = gen::gaussian(rng, n, n);
    const auto ev = densela::eigenvalues(a);
    cplx tr = 0.0, prod = 1.0, trace = 0.0;
    for (const cplx z : ev) {
      tr += z;
      prod *= z;
    }
    for (std::size_t i = 0; i < n; ++i) trace += a(i, i);
    const cplx det = oracle::to_eigen(a).determinant();
    CHECK(std::abs(tr - trace) <= 1e-8 * std::max(1.0, std::abs(trace)));
    CHECK(std::abs(prod - det) <= 1e-8 * std::max(1.0, std::abs(det)));
  }
}

TEST_CASE("inverse examples") {
  CHECK(dist(densela::inverse(CMatrix::identity(2)), CMatrix::identity(2)) <= 1e-15);
  const double lambda = 1e-4;
  const CMatrix d = densela::inverse(CMatrix::diag({lambda, 1 + lambda}));
  CHECK(std::abs(d(0, 0) - 1e4) <= 1e-9);
  CHECK(std::abs(d(1, 1) - 1.0 / (1.0 + lambda)) <= 1e-15);
  CHECK_THROWS_WITH_AS(densela::inverse(kB), doctest::Contains("singular"), ValidationError);

  gen::Rng rng(2);
  const CMatrix a = gen::well_conditioned(rng, 6, 100.0);
  CHECK(dist(densela::inverse(a), oracle::inverse(a)) <= 1e-12 * 100.0);
  CHECK(dist(densela::solve_square(a, CMatrix::identity(6)), oracle::inverse(a)) <= 1e-12 * 100.0);
}

TEST_CASE("matrix exponential examples") {
  CHECK(dist(densela::matrix_exp(CMatrix(2, 2)), CMatrix::identity(2)) <= 1e-15);
  const CMatrix e = densela::matrix_exp(CMatrix::diag({0, -1}));
  CHECK(std::abs(e(0, 0) - 1.0) <= 1e-15);
  CHECK(std::abs(e(1, 1) - std::exp(-1.0)) <= 1e-15);
  CHECK(std::abs(e(0, 1)) == 0.0);
  CHECK(dist(densela::matrix_exp(kB), CMatrix::identity(2) + kB) <= 1e-15);
}

TEST_CASE("matrix exponential against a diagonalised oracle") {
  gen::Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    const auto n = gen::uniform_index(rng, 1, 8);
    // A = S diag(mu) S^{-1}, so e^A = S diag(e^mu) S^{-1}
    const CMatrix s = gen::well_conditioned(rng, n, 5.0);
    const CMatrix s_inv = oracle::inverse(s);
    std::vector<cplx> mu(n), emu(n);
    for (std::size_t i = 0; i < n; ++i) {
      mu[i] = {gen::uniform_real(rng, -8, 4), gen::uniform_real(rng, -6, 6)};
      emu[i] = std::exp(mu[i]);
    }
    const CMatrix a = s * CMatrix::diag(mu) * s_inv;
    const CMatrix want = s * CMatrix::diag(emu) * s_inv;
    CHECK(dist(densela::matrix_exp(a), want) <= 1e-10 * want.frobenius_norm());
  }
  for (int t = 0; t < 20; ++t) {
    const auto n = gen::uniform_index(rng, 1, 8);
    CMatrix a = gen::gaussian(rng, n, n);
    a *= 10.0 / densela::norm2(a);
    CHECK(dist(densela::matrix_exp(a) * densela::matrix_exp(-a), CMatrix::identity(n)) <= 1e-9);
  }
}

TEST_CASE("Tolerances validation and mixed bound") {
  Tolerances tol;
  CHECK_NOTHROW(tol.validate());
  tol.eq_atol = -1;
  CHECK_THROWS_AS(tol.validate(), ValidationError);
  tol = {};
  tol.conv_tol = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(tol.validate(), ValidationError);
  const Tolerances def;
  CHECK(def.close(CMatrix::diag({1e8, 0}), CMatrix::diag({1e8 + 0.5, 0})));
  CHECK_FALSE(def.close(CMatrix::diag({1, 0}), CMatrix::diag({1 + 1e-6, 0})));
}
