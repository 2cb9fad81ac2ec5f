// SPDX-License-Identifier: Apache-2.0
//
// AVX2 + FMA variants. This file is compiled with -mavx2 -mfma and must only
// be entered after the dispatcher has confirmed CPU support.
#include <immintrin.h>

#include "dickeamp/kernels.hpp"

namespace dickeamp::kernels::detail {
namespace {

// A std::complex<double> array is a contiguous array of interleaved
// (re, im) doubles, so one __m256d holds two complex values.

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void axpy_avx2(cplx* y, const cplx* x, std::size_t n, double s) {
  double* yd = reinterpret_cast<double*>(y);
  const double* xd = reinterpret_cast<const double*>(x);
  const std::size_t m = 2 * n;
  const __m256d sv = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 8 <= m; i += 8) {
    __m256d y0 = _mm256_loadu_pd(yd + i);
    __m256d y1 = _mm256_loadu_pd(yd + i + 4);
    y0 = _mm256_fmadd_pd(sv, _mm256_loadu_pd(xd + i), y0);
    y1 = _mm256_fmadd_pd(sv, _mm256_loadu_pd(xd + i + 4), y1);
    _mm256_storeu_pd(yd + i, y0);
    _mm256_storeu_pd(yd + i + 4, y1);
  }
  for (; i + 4 <= m; i += 4) {
    _mm256_storeu_pd(yd + i, _mm256_fmadd_pd(sv, _mm256_loadu_pd(xd + i), _mm256_loadu_pd(yd + i)));
  }
  for (; i < m; ++i) yd[i] += s * xd[i];
}

void scale_avx2(cplx* x, std::size_t n, double s) {
  double* xd = reinterpret_cast<double*>(x);
  const std::size_t m = 2 * n;
  const __m256d sv = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    _mm256_storeu_pd(xd + i, _mm256_mul_pd(sv, _mm256_loadu_pd(xd + i)));
  }
  for (; i < m; ++i) xd[i] *= s;
}

double norm_sq_avx2(const cplx* x, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const std::size_t m = 2 * n;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= m; i += 8) {
    const __m256d v0 = _mm256_loadu_pd(xd + i);
    const __m256d v1 = _mm256_loadu_pd(xd + i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  for (; i + 4 <= m; i += 4) {
    const __m256d v = _mm256_loadu_pd(xd + i);
    acc0 = _mm256_fmadd_pd(v, v, acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < m; ++i) acc += xd[i] * xd[i];
  return acc;
}

cplx dot_avx2(const cplx* a, const cplx* b, std::size_t n) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  // re accumulates a*b lane-wise: [ar*br, ai*bi, ...]; summing all lanes gives Re.
  // im accumulates a*swap(b): [ar*bi, ai*br, ...]; even lanes minus odd lanes gives Im.
  __m256d re_acc = _mm256_setzero_pd();
  __m256d im_acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d av = _mm256_loadu_pd(ad + 2 * i);
    const __m256d bv = _mm256_loadu_pd(bd + 2 * i);
    re_acc = _mm256_fmadd_pd(av, bv, re_acc);
    im_acc = _mm256_fmadd_pd(av, _mm256_permute_pd(bv, 0b0101), im_acc);
  }
  const __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
  double re = hsum(re_acc);
  double im = hsum(_mm256_mul_pd(im_acc, sign));
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

}  // namespace

const KernelTable kAvx2Table{axpy_avx2, scale_avx2, norm_sq_avx2, dot_avx2};

}  // namespace dickeamp::kernels::detail
