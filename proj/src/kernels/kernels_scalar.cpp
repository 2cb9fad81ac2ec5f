// SPDX-License-Identifier: Apache-2.0
#include "dickeamp/kernels.hpp"

namespace dickeamp::kernels::detail {
namespace {

void axpy_scalar(cplx* y, const cplx* x, std::size_t n, double s) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = cplx(y[i].real() + s * x[i].real(), y[i].imag() + s * x[i].imag());
  }
}

void scale_scalar(cplx* x, std::size_t n, double s) {
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = cplx(s * x[i].real(), s * x[i].imag());
  }
}

double norm_sq_scalar(const cplx* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return acc;
}

cplx dot_scalar(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

}  // namespace

const KernelTable kScalarTable{axpy_scalar, scale_scalar, norm_sq_scalar, dot_scalar};

}  // namespace dickeamp::kernels::detail
