#include "pqinv/kernels.hpp"

#include <algorithm>

namespace pqinv::kernels::scalar {
namespace {

// Complex products are spelled out rather than left to std::complex so the
// operation order matches the AVX2 addsub sequence exactly.
inline void mul_acc(double ar, double ai, const double* b, double* c) {
  const double re = ar * b[0] - ai * b[1];
  const double im = ar * b[1] + ai * b[0];
  c[0] += re;
  c[1] += im;
}

void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx* a, const cplx* b, cplx* c) {
  std::fill(c, c + m * n, cplx{});
  for (std::size_t i = 0; i < m; ++i) {
    auto* ci = reinterpret_cast<double*>(c + i * n);
    for (std::size_t l = 0; l < k; ++l) {
      const double ar = a[i * k + l].real();
      const double ai = a[i * k + l].imag();
      const auto* bl = reinterpret_cast<const double*>(b + l * n);
      for (std::size_t j = 0; j < n; ++j) mul_acc(ar, ai, bl + 2 * j, ci + 2 * j);
    }
  }
}

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const auto* xd = reinterpret_cast<const double*>(x);
  auto* yd = reinterpret_cast<double*>(y);
  for (std::size_t j = 0; j < n; ++j) mul_acc(alpha.real(), alpha.imag(), xd + 2 * j, yd + 2 * j);
}

double sum_abs2(std::size_t n, const cplx* x) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += x[j].real() * x[j].real() + x[j].imag() * x[j].imag();
  return s;
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    re += x[j].real() * y[j].real() + x[j].imag() * y[j].imag();
    im += x[j].real() * y[j].imag() - x[j].imag() * y[j].real();
  }
  return {re, im};
}

}  // namespace

const Table kTable{Isa::scalar, &gemm, &axpy, &sum_abs2, &dotc};

}  // namespace pqinv::kernels::scalar
