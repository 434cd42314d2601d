#pragma once

// Complex double kernels for the optimizer's inner loops. Every routine has a
// scalar reference implementation; on x86-64 an AVX2/FMA variant is selected
// at runtime when the CPU supports it. MPENT_SIMD=scalar forces the reference
// path.

#include <cstddef>

#include "mpent/types.hpp"

namespace mpent::kernels {

enum class Isa { Scalar, Avx2 };

struct Table {
  Isa isa;
  const char* name;
  /// out(rows x rows) = M M^dagger for row-major M(rows x cols).
  void (*gram)(const cplx* m, std::size_t rows, std::size_t cols, cplx* out);
  /// C(n x p) = A(n x k) B(k x p), all row-major.
  void (*gemm)(const cplx* a, const cplx* b, std::size_t n, std::size_t k, std::size_t p,
               cplx* c);
  /// sum |x_i|^2
  double (*norm2)(const cplx* x, std::size_t n);
  /// sum conj(x_i) y_i
  cplx (*dotc)(const cplx* x, const cplx* y, std::size_t n);
};

bool available(Isa isa);
/// Throws UsageError when the ISA is not compiled in or not supported.
const Table& table(Isa isa);
/// Best available table, chosen once per process.
const Table& active();

namespace scalar {
void gram(const cplx* m, std::size_t rows, std::size_t cols, cplx* out);
void gemm(const cplx* a, const cplx* b, std::size_t n, std::size_t k, std::size_t p, cplx* c);
double norm2(const cplx* x, std::size_t n);
cplx dotc(const cplx* x, const cplx* y, std::size_t n);
}  // namespace scalar

#if defined(MPENT_HAVE_AVX2)
namespace avx2 {
void gram(const cplx* m, std::size_t rows, std::size_t cols, cplx* out);
void gemm(const cplx* a, const cplx* b, std::size_t n, std::size_t k, std::size_t p, cplx* c);
double norm2(const cplx* x, std::size_t n);
cplx dotc(const cplx* x, const cplx* y, std::size_t n);
}  // namespace avx2
#endif

}  // namespace mpent::kernels
