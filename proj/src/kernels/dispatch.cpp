#include <cstdlib>
#include <string_view>

#include "mpent/kernels.hpp"

namespace mpent::kernels {

namespace {

constexpr Table kScalar{Isa::Scalar, "scalar", scalar::gram, scalar::gemm, scalar::norm2,
                        scalar::dotc};

#if defined(MPENT_HAVE_AVX2)
constexpr Table kAvx2{Isa::Avx2, "avx2", avx2::gram, avx2::gemm, avx2::norm2, avx2::dotc};

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const Table& select() {
  if (const char* forced = std::getenv("MPENT_SIMD")) {
    if (std::string_view(forced) == "scalar") return kScalar;
  }
#if defined(MPENT_HAVE_AVX2)
  if (cpu_has_avx2()) return kAvx2;
#endif
  return kScalar;
}

}  // namespace

bool available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(MPENT_HAVE_AVX2)
      return cpu_has_avx2();
#else
      return false;
#endif
  }
  return false;
}

const Table& table(Isa isa) {
  if (!available(isa)) throw UsageError("kernel ISA not available on this build or CPU");
#if defined(MPENT_HAVE_AVX2)
  if (isa == Isa::Avx2) return kAvx2;
#endif
  return kScalar;
}

const Table& active() {
  static const Table& t = select();
  return t;
}

}  // namespace mpent::kernels
