#include "pqinv/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace pqinv::kernels {

bool supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(PQINV_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const Table& table(Isa isa) noexcept {
#if defined(PQINV_HAVE_AVX2)
  if (isa == Isa::avx2 && supported(Isa::avx2)) return avx2::kTable;
#endif
  (void)isa;
  return scalar::kTable;
}

namespace {

Isa pick() noexcept {
  if (const char* env = std::getenv("PQINV_KERNELS"); env != nullptr && std::string_view(env) == "scalar") {
    return Isa::scalar;
  }
  return supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

}  // namespace

const Table& active() noexcept {
  static const Table& selected = table(pick());
  return selected;
}

std::string_view name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace pqinv::kernels
