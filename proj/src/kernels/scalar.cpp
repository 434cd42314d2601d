#include "mpent/kernels.hpp"

namespace mpent::kernels::scalar {

cplx dotc(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

double norm2(const cplx* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::norm(x[i]);
  return s;
}

void gram(const cplx* m, std::size_t rows, std::size_t cols, cplx* out) {
  for (std::size_t a = 0; a < rows; ++a) {
    const cplx* ra = m + a * cols;
    out[a * rows + a] = cplx(norm2(ra, cols), 0.0);
    for (std::size_t b = a + 1; b < rows; ++b) {
      // out(a, b) = sum_t M(a, t) conj(M(b, t))
      const cplx v = dotc(m + b * cols, ra, cols);
      out[a * rows + b] = v;
      out[b * rows + a] = std::conj(v);
    }
  }
}

void gemm(const cplx* a, const cplx* b, std::size_t n, std::size_t k, std::size_t p, cplx* c) {
  for (std::size_t i = 0; i < n; ++i) {
    cplx* ci = c + i * p;
    for (std::size_t j = 0; j < p; ++j) ci[j] = cplx(0.0, 0.0);
    for (std::size_t l = 0; l < k; ++l) {
      const cplx s = a[i * k + l];
      const cplx* bl = b + l * p;
      for (std::size_t j = 0; j < p; ++j) ci[j] += s * bl[j];
    }
  }
}

}  // namespace mpent::kernels::scalar
