#pragma once

// Seeded generators for random test instances. Everything draws from a
// caller-owned std::mt19937_64, so a seed fixes the whole instance stream.

#include <cstdint>
#include <random>

#include "pqinv/cmatrix.hpp"

namespace pqinv::gen {

using Rng = std::mt19937_64;

/// Standard complex Gaussian entries (re, im ~ N(0, 1/2)).
CMatrix gaussian(Rng& rng, std::size_t rows, std::size_t cols);

/// rows x cols with orthonormal columns (cols <= rows).
CMatrix orthonormal(Rng& rng, std::size_t rows, std::size_t cols);

/// U diag(s) V^H with singular values log-spaced in [1, cond].
CMatrix well_conditioned(Rng& rng, std::size_t n, double cond);

/// Rank-r product of Gaussian factors.
CMatrix with_rank(Rng& rng, std::size_t rows, std::size_t cols, std::size_t r);

/// S diag(1,..,1,0,..,0) S^{-1}, rank r, cond(S) <= cond.
CMatrix idempotent(Rng& rng, std::size_t n, std::size_t r, double cond = 100.0);

/// Idempotent with range span(range_basis) and kernel span(kernel_basis);
/// the two column sets must together form a basis of C^n.
CMatrix idempotent_with(const CMatrix& range_basis, const CMatrix& kernel_basis);

/// S blockdiag(C, J) S^{-1} with C an invertible k x k core and J nilpotent
/// of the given index (0 means no nilpotent part). Ranks of the parts are
/// chosen from the RNG; n >= index.
CMatrix with_index(Rng& rng, std::size_t n, unsigned index);

/// A problem where a^{(2,l)}_{p,q} exists by construction.
struct Constructed {
  CMatrix a;
  CMatrix p;
  CMatrix q;
  CMatrix range_basis;     ///< orthonormal basis of Ran p (n x r)
  CMatrix coimage_basis;   ///< orthonormal basis of Ran(q)^⊥ (n x r)
  bool positive_core = false;  ///< nonzero spectrum of aw has Re >= 0.5
};

/// Ran w = span(U), Ker w = span(N)^⊥ with random orthonormal U, N (n x r),
/// and a = N C U^H + R - N N^H R U U^H so that N^H a U = C. The nonzero
/// spectrum of a w for w = U G N^H is spec(C G), and with G = I it is spec(C).
/// When `positive` the eigenvalues of C have real part in [0.5, 2].
Constructed constructed(Rng& rng, std::size_t n, std::size_t r, bool positive);

/// Unconstrained triple: random-rank a, random idempotents p and q whose
/// ranks sum to n half of the time.
struct Triple {
  CMatrix a;
  CMatrix p;
  CMatrix q;
};
Triple unconstrained(Rng& rng, std::size_t n);

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi);  ///< in [lo, hi]
double uniform_real(Rng& rng, double lo, double hi);

}  // namespace pqinv::gen
