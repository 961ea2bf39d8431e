#pragma once

// Data-parallel inner loops behind CMatrix arithmetic.
//
// Every kernel has a scalar reference implementation and, where the CPU
// supports it, an AVX2 variant. The variant is picked once at first use from
// CPUID; PQINV_KERNELS=scalar in the environment pins the reference path.
//
// gemm and axpy use the same per-element operation order in every variant,
// so their results are bitwise identical across ISAs. The reductions
// (sum_abs2, dotc) split the sum across lanes and agree only to rounding.

#include <complex>
#include <cstddef>
#include <string_view>

namespace pqinv::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

struct Table {
  Isa isa;
  /// C(m x n) = A(m x k) * B(k x n), all row-major, C overwritten.
  void (*gemm)(std::size_t m, std::size_t k, std::size_t n, const cplx* a, const cplx* b, cplx* c);
  /// y += alpha * x
  void (*axpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
  /// sum |x_i|^2
  double (*sum_abs2)(std::size_t n, const cplx* x);
  /// sum conj(x_i) * y_i
  cplx (*dotc)(std::size_t n, const cplx* x, const cplx* y);
};

/// True when the running CPU can execute the given variant.
bool supported(Isa isa) noexcept;

/// Kernel table for a specific variant; falls back to scalar when the
/// variant is not compiled in or not supported.
const Table& table(Isa isa) noexcept;

/// The table selected for this process.
const Table& active() noexcept;

std::string_view name(Isa isa) noexcept;

namespace scalar {
extern const Table kTable;
}

#if defined(PQINV_HAVE_AVX2)
namespace avx2 {
extern const Table kTable;
}
#endif

}  // namespace pqinv::kernels
