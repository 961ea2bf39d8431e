// AVX2 variants. This translation unit is compiled with -mavx2 (no -mfma)
// and must only be entered after kernels::supported(Isa::avx2) says so.

#include "pqinv/kernels.hpp"

#include <immintrin.h>

#include <algorithm>

namespace pqinv::kernels::avx2 {
namespace {

// c[0..3] += (ar + i ai) * b[0..3] for two interleaved complex values.
// Lane results: even = ar*br - ai*bi, odd = ar*bi + ai*br, matching scalar.
inline __m256d cmul2(__m256d ar, __m256d ai, __m256d b) {
  const __m256d swapped = _mm256_permute_pd(b, 0b0101);
  return _mm256_addsub_pd(_mm256_mul_pd(ar, b), _mm256_mul_pd(ai, swapped));
}

inline void axpy_row(double ar_s, double ai_s, const double* x, double* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(ar_s);
  const __m256d ai = _mm256_set1_pd(ai_s);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d y0 = _mm256_loadu_pd(y + 2 * j);
    __m256d y1 = _mm256_loadu_pd(y + 2 * j + 4);
    y0 = _mm256_add_pd(y0, cmul2(ar, ai, _mm256_loadu_pd(x + 2 * j)));
    y1 = _mm256_add_pd(y1, cmul2(ar, ai, _mm256_loadu_pd(x + 2 * j + 4)));
    _mm256_storeu_pd(y + 2 * j, y0);
    _mm256_storeu_pd(y + 2 * j + 4, y1);
  }
  for (; j + 2 <= n; j += 2) {
    const __m256d y0 = _mm256_add_pd(_mm256_loadu_pd(y + 2 * j), cmul2(ar, ai, _mm256_loadu_pd(x + 2 * j)));
    _mm256_storeu_pd(y + 2 * j, y0);
  }
  for (; j < n; ++j) {
    const double re = ar_s * x[2 * j] - ai_s * x[2 * j + 1];
    const double im = ar_s * x[2 * j + 1] + ai_s * x[2 * j];
    y[2 * j] += re;
    y[2 * j + 1] += im;
  }
}

void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx* a, const cplx* b, cplx* c) {
  std::fill(c, c + m * n, cplx{});
  for (std::size_t i = 0; i < m; ++i) {
    auto* ci = reinterpret_cast<double*>(c + i * n);
    for (std::size_t l = 0; l < k; ++l) {
      const cplx ail = a[i * k + l];
      axpy_row(ail.real(), ail.imag(), reinterpret_cast<const double*>(b + l * n), ci, n);
    }
  }
}

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  axpy_row(alpha.real(), alpha.imag(), reinterpret_cast<const double*>(x), reinterpret_cast<double*>(y), n);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double sum_abs2(std::size_t n, const cplx* x) {
  const auto* xd = reinterpret_cast<const double*>(x);
  const std::size_t len = 2 * n;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 8 <= len; j += 8) {
    const __m256d v0 = _mm256_loadu_pd(xd + j);
    const __m256d v1 = _mm256_loadu_pd(xd + j + 4);
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(v0, v0));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(v1, v1));
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; j < len; ++j) s += xd[j] * xd[j];
  return s;
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  const auto* xd = reinterpret_cast<const double*>(x);
  const auto* yd = reinterpret_cast<const double*>(y);
  // re accumulates xr*yr + xi*yi lane-wise; im accumulates xr*yi - xi*yr
  // via the swapped y with sign flips on the odd lanes.
  const __m256d sign = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * j);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * j);
    acc_re = _mm256_add_pd(acc_re, _mm256_mul_pd(xv, yv));
    const __m256d ys = _mm256_xor_pd(_mm256_permute_pd(yv, 0b0101), sign);
    acc_im = _mm256_add_pd(acc_im, _mm256_mul_pd(xv, ys));
  }
  double re = hsum(acc_re);
  double im = hsum(acc_im);
  for (; j < n; ++j) {
    re += x[j].real() * y[j].real() + x[j].imag() * y[j].imag();
    im += x[j].real() * y[j].imag() - x[j].imag() * y[j].real();
  }
  return {re, im};
}

}  // namespace

const Table kTable{Isa::avx2, &gemm, &axpy, &sum_abs2, &dotc};

}  // namespace pqinv::kernels::avx2
