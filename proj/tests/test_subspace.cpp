#include "doctest.h"
#include "oracle.hpp"
#include "pqinv/random.hpp"
#include "pqinv/subspace.hpp"

using namespace pqinv;
using namespace pqinv::subspace;

namespace {

const CMatrix kA = CMatrix::from_rows({{0, 0}, {1, 0}});
const CMatrix kP = CMatrix::from_rows({{1, 1}, {0, 0}});
const CMatrix kOneMinusQ = CMatrix::from_rows({{0, 1}, {0, 1}});

Subspace line(cplx x, cplx y) {
  const double n = std::sqrt(std::norm(x) + std::norm(y));
  return Subspace(CMatrix::from_rows({{x / n}, {y / n}}));
}

const Subspace e1 = line(1, 0);
const Subspace e2 = line(0, 1);

}  // namespace

TEST_CASE("Subspace rejects non-orthonormal bases") {
  CHECK_THROWS_AS(Subspace(CMatrix::from_rows({{1, 1}, {0, 1}})), ValidationError);
  CHECK_THROWS_AS(Subspace(CMatrix(1, 2)), ValidationError);
  CHECK(Subspace::zero(3).dim() == 0);
  CHECK(Subspace::whole(3).dim() == 3);
}

TEST_CASE("range_of and kernel_of examples") {
  CHECK(equals(range_of(kP), e1));
  CHECK(range_of(CMatrix::identity(2)).dim() == 2);
  CHECK(range_of(CMatrix(2, 2)).dim() == 0);
  CHECK(equals(kernel_of(kA), e2));
  CHECK(kernel_of(CMatrix::identity(2)).dim() == 0);
  CHECK(kernel_of(CMatrix(2, 2)).dim() == 2);
}

TEST_CASE("image examples") {
  CHECK(equals(image(kA, e1), e2));
  const Subspace s = line(1, cplx(0, 2));
  CHECK(equals(image(CMatrix::identity(2), s), s));
  CHECK(image(CMatrix(2, 2), s).dim() == 0);
  CHECK_THROWS_AS(image(CMatrix(2, 3), s), DimensionError);
}

TEST_CASE("intersect, sum and direct sums") {
  CHECK(intersect(e1, e2).dim() == 0);
  CHECK(intersect(kernel_of(kA), range_of(kP)).dim() == 0);
  const Subspace s = line(1, 1);
  CHECK(equals(intersect(s, s), s));

  CHECK(sum(e1, e2).dim() == 2);
  CHECK(sum(image(kA, range_of(kP)), e1).dim() == 2);
  CHECK(equals(sum(s, Subspace::zero(2)), s));

  CHECK(is_direct_sum_all(e2, e1));
  CHECK_FALSE(is_direct_sum_all(e1, e1));
  CHECK(is_direct_sum_all(Subspace::zero(2), Subspace::whole(2)));
}

TEST_CASE("equals, contains and distance") {
  const Subspace a_ran_p = image(kA, range_of(kP));
  const Subspace ran_1q = range_of(kOneMinusQ);
  CHECK(equals(ran_1q, line(1, 1)));
  CHECK_FALSE(equals(a_ran_p, ran_1q));
  CHECK(contains(line(3, 4), Subspace::zero(2)));
  CHECK(contains(Subspace::whole(2), line(3, 4)));
  CHECK_FALSE(contains(e1, e2));
  // projectors onto e2 and (1,1)/sqrt2 differ by [[-1/2,-1/2],[-1/2,1/2]], Frobenius norm 1
  CHECK(std::abs(distance(a_ran_p, ran_1q) - 1.0) <= 1e-14);
  CHECK(distance(e1, e1) <= 1e-15);
}

TEST_CASE("subspace dimension identity on random pairs") {
  gen::Rng rng(31);
  for (int t = 0; t < 60; ++t) {
    const auto n = gen::uniform_index(rng, 1, 10);
    const auto ds = gen::uniform_index(rng, 0, n);
    const auto dt = gen::uniform_index(rng, 0, n);
    // force a shared part sometimes
    const auto shared = gen::uniform_index(rng, 0, std::min(ds, dt));
    const CMatrix common = gen::gaussian(rng, n, shared);
    const CMatrix bs = hcat(common, gen::gaussian(rng, n, ds - shared));
    const CMatrix bt = hcat(common, gen::gaussian(rng, n, dt - shared));
    const Subspace s = range_of(bs), u = range_of(bt);
    CHECK(sum(s, u).dim() + intersect(s, u).dim() == s.dim() + u.dim());
    if (ds + dt <= n) CHECK(intersect(s, u).dim() == shared);
  }
}

TEST_CASE("range and kernel are invariant under invertible factors") {
  gen::Rng rng(37);
  for (int t = 0; t < 30; ++t) {
    const auto n = gen::uniform_index(rng, 1, 8);
    const CMatrix a = gen::with_rank(rng, n, n, gen::uniform_index(rng, 0, n));
    const CMatrix m = gen::well_conditioned(rng, n, 10.0);
    CHECK(equals(range_of(a), range_of(a * m)));
    CHECK(equals(kernel_of(a), kernel_of(m * a)));
  }
}

TEST_CASE("fixing lemma at the subspace level") {
  gen::Rng rng(41);
  const Tolerances tol;
  for (int t = 0; t < 40; ++t) {
    const auto n = gen::uniform_index(rng, 2, 8);
    const auto r = gen::uniform_index(rng, 1, n - 1);
    const CMatrix p = gen::idempotent(rng, n, r);
    const CMatrix g = gen::gaussian(rng, n, n);
    const CMatrix inside = p * g;
    const CMatrix anywhere = gen::gaussian(rng, n, 1);
    CHECK(tol.close(p * inside, inside));
    CHECK(contains(range_of(p, tol, 1.0), range_of(inside)));
    CHECK_FALSE(tol.close(p * anywhere, anywhere));
    CHECK_FALSE(contains(range_of(p, tol, 1.0), range_of(anywhere)));
    const CMatrix killed = g * p;
    CHECK(tol.close(killed * p, killed));
    CHECK(contains(kernel_of(killed), kernel_of(p, tol, 1.0)));
  }
}

TEST_CASE("a direct sum splits every vector uniquely") {
  gen::Rng rng(43);
  for (int t = 0; t < 30; ++t) {
    const auto n = gen::uniform_index(rng, 1, 8);
    const auto d = gen::uniform_index(rng, 0, n);
    const Subspace s = range_of(gen::gaussian(rng, n, d));
    const Subspace u = range_of(gen::gaussian(rng, n, n - d));
    REQUIRE(is_direct_sum_all(s, u));
    const CMatrix v = gen::gaussian(rng, n, 1);
    const CMatrix coords = oracle::inverse(hcat(s.basis(), u.basis())) * v;
    CHECK((hcat(s.basis(), u.basis()) * coords - v).frobenius_norm() <= 1e-10);
  }
}
