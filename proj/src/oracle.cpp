// SPDX-License-Identifier: Apache-2.0
#include "dickeamp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "dickeamp/errors.hpp"
#include "dickeamp/kernels.hpp"

namespace dickeamp::oracle {
namespace {

void check_atoms(int n_atoms) {
  if (n_atoms < 1) throw DomainError("oracle: N must be >= 1");
  if (n_atoms > kMaxAtoms) {
    throw ResourceGuard("oracle: N=" + std::to_string(n_atoms) + " exceeds the 2^" +
                        std::to_string(kMaxAtoms) + " product-space guard");
  }
}

// 1 / sqrt(C(N, k)), built multiplicatively.
double dicke_weight(int k, int n_atoms) {
  double binom = 1.0;
  for (int j = 1; j <= k; ++j) binom = binom * (n_atoms - k + j) / j;
  return 1.0 / std::sqrt(binom);
}

}  // namespace

FullStateVector::FullStateVector(int n_atoms) : n_atoms_(n_atoms) {
  check_atoms(n_atoms);
  amps_.assign(std::size_t{1} << n_atoms, cplx{});
}

FullStateVector::FullStateVector(int n_atoms, std::vector<cplx> amplitudes)
    : n_atoms_(n_atoms), amps_(std::move(amplitudes)) {
  check_atoms(n_atoms);
  if (amps_.size() != (std::size_t{1} << n_atoms)) {
    throw DomainError("FullStateVector: amplitude array must have length 2^N");
  }
  for (const cplx& c : amps_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw DomainError("FullStateVector: non-finite amplitude");
    }
  }
}

double FullStateVector::norm_sq() const { return kernels::norm_sq(amps_); }

FullStateVector build_dicke_full(int k, int n_atoms) {
  check_atoms(n_atoms);
  if (k < 0 || k > n_atoms) throw DomainError("build_dicke_full: k outside [0, N]");
  FullStateVector out(n_atoms);
  const double w = dicke_weight(k, n_atoms);
  for (std::size_t mask = 0; mask < out.size(); ++mask) {
    if (std::popcount(mask) == k) out[mask] = w;
  }
  return out;
}

FullStateVector apply_collective_full(LadderDirection dir, const FullStateVector& state) {
  const int n = state.n_atoms();
  FullStateVector out(n);
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  const std::size_t dim = state.size();
  auto src = state.amplitudes();
  auto dst = out.amplitudes();
  // For atom i the masks split into runs of length 2^i with bit i clear,
  // each followed by its partner run with bit i set.
  for (int i = 0; i < n; ++i) {
    const std::size_t run = std::size_t{1} << i;
    for (std::size_t base = 0; base < dim; base += 2 * run) {
      if (dir == LadderDirection::Raise) {
        kernels::axpy(dst.subspan(base + run, run), src.subspan(base, run), s);
      } else {
        kernels::axpy(dst.subspan(base, run), src.subspan(base + run, run), s);
      }
    }
  }
  return out;
}

Projection project_to_dicke(const FullStateVector& state) {
  const int n = state.n_atoms();
  std::vector<double> weight(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) weight[static_cast<std::size_t>(k)] = dicke_weight(k, n);

  std::vector<cplx> c(static_cast<std::size_t>(n) + 1);
  for (std::size_t mask = 0; mask < state.size(); ++mask) {
    const auto k = static_cast<std::size_t>(std::popcount(mask));
    c[k] += weight[k] * state[mask];
  }
  double residual_sq = 0.0;
  for (std::size_t mask = 0; mask < state.size(); ++mask) {
    const auto k = static_cast<std::size_t>(std::popcount(mask));
    residual_sq += std::norm(state[mask] - c[k] * weight[k]);
  }
  return {DickeVector(n, std::move(c)), std::sqrt(residual_sq)};
}

VerificationReport verify_ladder(int n_atoms, double tolerance) {
  check_atoms(n_atoms);
  VerificationReport report{n_atoms, {}, {}, 0.0, 0.0, true};
  auto track = [&](double deviation, double residual) {
    report.max_deviation = std::max(report.max_deviation, deviation);
    report.max_residual = std::max(report.max_residual, residual);
    return deviation < tolerance && residual < kExactTol;
  };

  for (int k = 0; k <= n_atoms; ++k) {
    const FullStateVector input = build_dicke_full(k, n_atoms);
    for (LadderDirection dir : {LadderDirection::Raise, LadderDirection::Lower}) {
      const Projection proj = project_to_dicke(apply_collective_full(dir, input));
      const double expected = ladder_coeff(dir, k, n_atoms);
      const int target = dir == LadderDirection::Raise ? k + 1 : k - 1;
      double observed = 0.0;
      double deviation = 0.0;
      for (int j = 0; j <= n_atoms; ++j) {
        const cplx c = proj.dicke[j];
        const double want = (j == target) ? expected : 0.0;
        if (j == target) observed = c.real();
        deviation = std::max(deviation, std::abs(c - want));
      }
      const bool pass = track(deviation, proj.residual_norm);
      report.ladder.push_back({k, dir, expected, observed, deviation, proj.residual_norm, pass});
      report.pass = report.pass && pass;
    }

    const FullStateVector ss = apply_collective_full(
        LadderDirection::Lower, apply_collective_full(LadderDirection::Raise, input));
    const Projection proj = project_to_dicke(ss);
    const double expected = (k + 1) * (1.0 - static_cast<double>(k) / n_atoms);
    double deviation = 0.0;
    for (int j = 0; j <= n_atoms; ++j) {
      deviation = std::max(deviation, std::abs(proj.dicke[j] - (j == k ? expected : 0.0)));
    }
    const bool pass = track(deviation, proj.residual_norm);
    report.ss_dagger.push_back({k, expected, proj.dicke[k].real(), deviation, proj.residual_norm, pass});
    report.pass = report.pass && pass;
  }
  return report;
}

}  // namespace dickeamp::oracle
