// SPDX-License-Identifier: Apache-2.0
#include <atomic>
#include <cstdlib>
#include <string>

#include "dickeamp/errors.hpp"
#include "dickeamp/kernels.hpp"

namespace dickeamp::kernels {
namespace {

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(DICKEAMP_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(DICKEAMP_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() {
  if (const char* env = std::getenv("DICKEAMP_KERNELS")) {
    const std::string want(env);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (want == isa_name(isa) && cpu_supports(isa)) return isa;
    }
  }
  if (cpu_supports(Isa::Avx2)) return Isa::Avx2;
  if (cpu_supports(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

std::atomic<const KernelTable*> g_table{nullptr};
std::atomic<Isa> g_isa{Isa::Scalar};

const KernelTable& current() {
  const KernelTable* t = g_table.load(std::memory_order_acquire);
  if (t == nullptr) {
    const Isa isa = best_isa();
    g_isa.store(isa, std::memory_order_relaxed);
    t = &table_for(isa);
    g_table.store(t, std::memory_order_release);
  }
  return *t;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    if (cpu_supports(isa)) out.push_back(isa);
  }
  return out;
}

Isa active_isa() {
  current();
  return g_isa.load(std::memory_order_relaxed);
}

void set_isa(Isa isa) {
  if (!cpu_supports(isa)) {
    throw DomainError("kernel ISA '" + std::string(isa_name(isa)) + "' is not available on this CPU");
  }
  g_isa.store(isa, std::memory_order_relaxed);
  g_table.store(&table_for(isa), std::memory_order_release);
}

const KernelTable& table_for(Isa isa) {
  switch (isa) {
#if defined(DICKEAMP_HAVE_AVX2)
    case Isa::Avx2:
      return detail::kAvx2Table;
#endif
#if defined(DICKEAMP_HAVE_NEON)
    case Isa::Neon:
      return detail::kNeonTable;
#endif
    default:
      return detail::kScalarTable;
  }
}

void axpy(std::span<cplx> y, std::span<const cplx> x, double s) {
  if (y.size() != x.size()) throw DomainError("axpy: length mismatch");
  current().axpy(y.data(), x.data(), y.size(), s);
}

void scale(std::span<cplx> x, double s) { current().scale(x.data(), x.size(), s); }

double norm_sq(std::span<const cplx> x) { return current().norm_sq(x.data(), x.size()); }

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw DomainError("dot: length mismatch");
  return current().dot(a.data(), b.data(), a.size());
}

}  // namespace dickeamp::kernels
