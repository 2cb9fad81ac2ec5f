// SPDX-License-Identifier: Apache-2.0
#pragma once

// Dense complex-vector kernels used by the state-vector inner loops.
//
// Every kernel has a scalar reference implementation. Vectorized variants
// (AVX2+FMA on x86-64, NEON on AArch64) are compiled into the library when
// the target supports them and chosen at runtime from the CPU features. The
// environment variable DICKEAMP_KERNELS=scalar|avx2|neon overrides the choice
// at first use; set_isa() overrides it programmatically.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace dickeamp::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

/// ISAs compiled in and supported by the running CPU. Scalar is always first.
std::vector<Isa> available_isas();

Isa active_isa();

/// Throws DomainError if `isa` is not available on this machine.
void set_isa(Isa isa);

/// y += s * x (lengths must match).
void axpy(std::span<cplx> y, std::span<const cplx> x, double s);

/// x *= s.
void scale(std::span<cplx> x, double s);

/// sum |x_i|^2.
double norm_sq(std::span<const cplx> x);

/// sum conj(a_i) * b_i.
cplx dot(std::span<const cplx> a, std::span<const cplx> b);

// Per-ISA entry points, exposed for equivalence testing. Calling a variant
// that is not available is undefined behaviour; check available_isas() first.
struct KernelTable {
  void (*axpy)(cplx* y, const cplx* x, std::size_t n, double s);
  void (*scale)(cplx* x, std::size_t n, double s);
  double (*norm_sq)(const cplx* x, std::size_t n);
  cplx (*dot)(const cplx* a, const cplx* b, std::size_t n);
};

const KernelTable& table_for(Isa isa);

namespace detail {
extern const KernelTable kScalarTable;
#if defined(DICKEAMP_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif
#if defined(DICKEAMP_HAVE_NEON)
extern const KernelTable kNeonTable;
#endif
}  // namespace detail

}  // namespace dickeamp::kernels
