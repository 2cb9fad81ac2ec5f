// SPDX-License-Identifier: Apache-2.0
//
// NEON variants for AArch64 (Advanced SIMD is mandatory there, so no runtime
// probe is needed beyond the compile-time target check).
#include <arm_neon.h>

#include "dickeamp/kernels.hpp"

namespace dickeamp::kernels::detail {
namespace {

// One float64x2_t holds one complex value (re, im).

void axpy_neon(cplx* y, const cplx* x, std::size_t n, double s) {
  double* yd = reinterpret_cast<double*>(y);
  const double* xd = reinterpret_cast<const double*>(x);
  const float64x2_t sv = vdupq_n_f64(s);
  for (std::size_t i = 0; i < n; ++i) {
    vst1q_f64(yd + 2 * i, vfmaq_f64(vld1q_f64(yd + 2 * i), sv, vld1q_f64(xd + 2 * i)));
  }
}

void scale_neon(cplx* x, std::size_t n, double s) {
  double* xd = reinterpret_cast<double*>(x);
  const float64x2_t sv = vdupq_n_f64(s);
  for (std::size_t i = 0; i < n; ++i) {
    vst1q_f64(xd + 2 * i, vmulq_f64(sv, vld1q_f64(xd + 2 * i)));
  }
}

double norm_sq_neon(const cplx* x, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t v0 = vld1q_f64(xd + 2 * i);
    const float64x2_t v1 = vld1q_f64(xd + 2 * i + 2);
    acc0 = vfmaq_f64(acc0, v0, v0);
    acc1 = vfmaq_f64(acc1, v1, v1);
  }
  if (i < n) {
    const float64x2_t v = vld1q_f64(xd + 2 * i);
    acc0 = vfmaq_f64(acc0, v, v);
  }
  return vaddvq_f64(vaddq_f64(acc0, acc1));
}

cplx dot_neon(const cplx* a, const cplx* b, std::size_t n) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  float64x2_t re_acc = vdupq_n_f64(0.0);
  float64x2_t im_acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t av = vld1q_f64(ad + 2 * i);
    const float64x2_t bv = vld1q_f64(bd + 2 * i);
    re_acc = vfmaq_f64(re_acc, av, bv);
    im_acc = vfmaq_f64(im_acc, av, vextq_f64(bv, bv, 1));
  }
  const double re = vaddvq_f64(re_acc);
  const double im = vgetq_lane_f64(im_acc, 0) - vgetq_lane_f64(im_acc, 1);
  return {re, im};
}

}  // namespace

const KernelTable kNeonTable{axpy_neon, scale_neon, norm_sq_neon, dot_neon};

}  // namespace dickeamp::kernels::detail
