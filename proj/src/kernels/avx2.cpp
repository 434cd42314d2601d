#include <immintrin.h>

#include "mpent/kernels.hpp"

namespace mpent::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

// Two complex numbers per register: [re0, im0, re1, im1].
cplx dotc(const cplx* x, const cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(xp + 2 * i);
    const __m256d vy = _mm256_loadu_pd(yp + 2 * i);
    acc_re = _mm256_fmadd_pd(vx, vy, acc_re);  // xr*yr, xi*yi
    const __m256d vys = _mm256_permute_pd(vy, 0b0101);
    acc_im = _mm256_fmadd_pd(vx, vys, acc_im);  // xr*yi, xi*yr
  }
  double re = hsum(acc_re);
  alignas(32) double im_lanes[4];
  _mm256_store_pd(im_lanes, acc_im);
  double im = (im_lanes[0] - im_lanes[1]) + (im_lanes[2] - im_lanes[3]);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

double norm2(const cplx* x, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  const std::size_t len = 2 * n;
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d v = _mm256_loadu_pd(xp + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < len; ++i) s += xp[i] * xp[i];
  return s;
}

void gram(const cplx* m, std::size_t rows, std::size_t cols, cplx* out) {
  for (std::size_t a = 0; a < rows; ++a) {
    const cplx* ra = m + a * cols;
    out[a * rows + a] = cplx(norm2(ra, cols), 0.0);
    for (std::size_t b = a + 1; b < rows; ++b) {
      const cplx v = dotc(m + b * cols, ra, cols);
      out[a * rows + b] = v;
      out[b * rows + a] = std::conj(v);
    }
  }
}

void gemm(const cplx* a, const cplx* b, std::size_t n, std::size_t k, std::size_t p, cplx* c) {
  for (std::size_t i = 0; i < n; ++i) {
    double* ci = reinterpret_cast<double*>(c + i * p);
    for (std::size_t j = 0; j < 2 * p; ++j) ci[j] = 0.0;
    for (std::size_t l = 0; l < k; ++l) {
      const cplx s = a[i * k + l];
      const __m256d sr = _mm256_set1_pd(s.real());
      const __m256d si = _mm256_set1_pd(s.imag());
      const double* bl = reinterpret_cast<const double*>(b + l * p);
      std::size_t j = 0;
      for (; j + 2 <= p; j += 2) {
        const __m256d vb = _mm256_loadu_pd(bl + 2 * j);
        const __m256d vbs = _mm256_permute_pd(vb, 0b0101);
        // even lanes: sr*br - si*bi, odd lanes: sr*bi + si*br
        const __m256d prod = _mm256_fmaddsub_pd(sr, vb, _mm256_mul_pd(si, vbs));
        _mm256_storeu_pd(ci + 2 * j, _mm256_add_pd(_mm256_loadu_pd(ci + 2 * j), prod));
      }
      for (; j < p; ++j) {
        const double br = bl[2 * j], bi = bl[2 * j + 1];
        ci[2 * j] += s.real() * br - s.imag() * bi;
        ci[2 * j + 1] += s.real() * bi + s.imag() * br;
      }
    }
  }
}

}  // namespace mpent::kernels::avx2
