// SPDX-License-Identifier: Apache-2.0
#include "dickeamp/dicke.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dickeamp/errors.hpp"
#include "dickeamp/kernels.hpp"

namespace dickeamp {

int default_k_max(int n_atoms) { return std::min(n_atoms, 16); }

DickeVector::DickeVector(int n_atoms, int k_max)
    : n_atoms_(n_atoms), amps_(static_cast<std::size_t>(std::max(k_max, 0)) + 1) {
  if (k_max < 0) throw DomainError("DickeVector: k_max must be >= 0");
  validate();
}

DickeVector::DickeVector(int n_atoms, std::vector<cplx> amplitudes)
    : n_atoms_(n_atoms), amps_(std::move(amplitudes)) {
  if (amps_.empty()) throw DomainError("DickeVector: empty amplitude array");
  validate();
}

void DickeVector::validate() const {
  if (n_atoms_ < 1) throw DomainError("DickeVector: N must be >= 1");
  if (k_max() > n_atoms_) {
    throw DomainError("DickeVector: k_max " + std::to_string(k_max()) + " exceeds N " +
                      std::to_string(n_atoms_));
  }
  for (const cplx& c : amps_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw DomainError("DickeVector: non-finite amplitude");
    }
  }
}

DickeVector DickeVector::basis(int k, int n_atoms, int k_max) {
  if (k_max < 0) k_max = default_k_max(n_atoms);
  if (k < 0 || k > k_max) throw DomainError("DickeVector::basis: k out of range");
  DickeVector v(n_atoms, k_max);
  v.amps_[static_cast<std::size_t>(k)] = 1.0;
  v.normalized_ = true;
  return v;
}

void DickeVector::set(int k, cplx value) {
  if (k < 0 || k > k_max()) throw DomainError("DickeVector::set: k out of range");
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw DomainError("DickeVector::set: non-finite amplitude");
  }
  amps_[static_cast<std::size_t>(k)] = value;
  normalized_ = false;
}

std::span<cplx> DickeVector::mutable_amplitudes() {
  normalized_ = false;
  return amps_;
}

double DickeVector::norm_sq() const { return kernels::norm_sq(amps_); }

double DickeVector::norm() const { return std::sqrt(norm_sq()); }

bool DickeVector::is_zero() const {
  return std::all_of(amps_.begin(), amps_.end(), [](const cplx& c) { return c == cplx{}; });
}

DickeVector DickeVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw DomainError("cannot normalize a zero DickeVector");
  DickeVector out = *this;
  kernels::scale(out.amps_, 1.0 / n);
  out.normalized_ = true;
  return out;
}

DickeVector DickeVector::with_k_max(int k_max) const {
  if (k_max < 0 || k_max > n_atoms_) throw DomainError("with_k_max: cutoff out of range");
  for (int k = k_max + 1; k <= this->k_max(); ++k) {
    if ((*this)[k] != cplx{}) {
      throw TruncationOverflow("with_k_max: nonzero amplitude at k=" + std::to_string(k) +
                               " above new cutoff " + std::to_string(k_max));
    }
  }
  std::vector<cplx> amps(static_cast<std::size_t>(k_max) + 1);
  const int common = std::min(k_max, this->k_max());
  std::copy_n(amps_.begin(), common + 1, amps.begin());
  DickeVector out(n_atoms_, std::move(amps));
  out.normalized_ = normalized_;
  return out;
}

DickeVector& DickeVector::operator*=(cplx s) {
  for (cplx& c : amps_) c *= s;
  normalized_ = false;
  return *this;
}

double ladder_coeff(LadderDirection dir, int k, int n_atoms) {
  if (n_atoms < 1) throw DomainError("ladder_coeff: N must be >= 1");
  if (k < 0 || k > n_atoms) {
    throw DomainError("ladder_coeff: k=" + std::to_string(k) + " outside [0, N=" +
                      std::to_string(n_atoms) + "]");
  }
  const double n = n_atoms;
  if (dir == LadderDirection::Raise) {
    if (k == n_atoms) return 0.0;
    return std::sqrt((k + 1) * (1.0 - k / n));
  }
  if (k == 0) return 0.0;
  return std::sqrt(k * (1.0 - (k - 1) / n));
}

DickeVector apply_ladder(LadderDirection dir, const DickeVector& state) {
  const int n = state.n_atoms();
  const int top = state.k_max();
  DickeVector out(n, top);
  auto dst = out.mutable_amplitudes();
  if (dir == LadderDirection::Raise) {
    if (top < n && state[top] != cplx{}) {
      throw TruncationOverflow("apply_ladder(Raise): nonzero amplitude at k_max=" +
                               std::to_string(top) + " would leave the truncated space");
    }
    for (int k = 0; k < top; ++k) {
      dst[static_cast<std::size_t>(k + 1)] = ladder_coeff(LadderDirection::Raise, k, n) * state[k];
    }
  } else {
    for (int k = 1; k <= top; ++k) {
      dst[static_cast<std::size_t>(k - 1)] = ladder_coeff(LadderDirection::Lower, k, n) * state[k];
    }
  }
  return out;
}

DickeVector apply_ss_dagger(const DickeVector& state) {
  const double n = state.n_atoms();
  DickeVector out = state;
  auto dst = out.mutable_amplitudes();
  for (std::size_t k = 0; k < dst.size(); ++k) {
    dst[k] *= (static_cast<double>(k) + 1.0) * (1.0 - static_cast<double>(k) / n);
  }
  return out;
}

double gain_eigenvalue(Schedule schedule, int k, int n_atoms, int stages) {
  if (n_atoms < 1) throw DomainError("gain_eigenvalue: N must be >= 1");
  if (k < 0 || k > n_atoms) throw DomainError("gain_eigenvalue: k outside [0, N]");
  if (stages < 0) throw DomainError("gain_eigenvalue: negative stage count");
  if (stages == 0) return 1.0;
  const double n = n_atoms;
  if (schedule == Schedule::TypeI) {
    return std::pow((k + 1) * (1.0 - k / n), stages);
  }
  if (k + stages > n_atoms) {
    throw DomainError("gain_eigenvalue(TypeII): k + n = " + std::to_string(k + stages) +
                      " exceeds N = " + std::to_string(n_atoms));
  }
  double product = 1.0;
  for (int h = k + 1; h <= k + stages; ++h) product *= h * (1.0 - (h - 1) / n);
  return product;
}

double relative_gain(Schedule schedule, int stages, int n_atoms) {
  if (n_atoms < 1) throw DomainError("relative_gain: N must be >= 1");
  if (stages < 0) throw DomainError("relative_gain: negative stage count");
  const double n = n_atoms;
  if (schedule == Schedule::TypeI) return std::pow(2.0 * (1.0 - 1.0 / n), stages);
  return (stages + 1) * (1.0 - stages / n);
}

DickeVector weak_coherent_atomic_state(cplx alpha, int n_atoms, int k_max) {
  if (k_max < 0) k_max = default_k_max(n_atoms);
  if (k_max < 1) throw DomainError("weak_coherent_atomic_state: k_max must be >= 1");
  DickeVector v(n_atoms, k_max);
  v.set(0, 1.0);
  v.set(1, alpha);
  return v.normalized();
}

cplx inner(const DickeVector& a, const DickeVector& b) {
  const std::size_t common = static_cast<std::size_t>(std::min(a.k_max(), b.k_max())) + 1;
  return kernels::dot(a.amplitudes().first(common), b.amplitudes().first(common));
}

double fidelity(const DickeVector& a, const DickeVector& b) {
  if (a.n_atoms() != b.n_atoms()) throw DomainError("fidelity: atom counts differ");
  const double na = a.norm_sq();
  const double nb = b.norm_sq();
  if (na == 0.0 || nb == 0.0) throw DomainError("fidelity: zero-norm input");
  return std::norm(inner(a, b)) / (na * nb);
}

}  // namespace dickeamp
