// SPDX-License-Identifier: Apache-2.0
#pragma once

// Brute-force reference in the full 2^N product space. Basis states are
// bitmasks, little-endian: bit i set <=> atom i is in |s>. Used to check the
// closed-form collective-operator algebra in dicke.hpp.

#include <vector>

#include "dickeamp/dicke.hpp"

namespace dickeamp::oracle {

/// Hard memory guard on the product space.
inline constexpr int kMaxAtoms = 14;

class FullStateVector {
 public:
  /// Zero vector; throws ResourceGuard for N > kMaxAtoms.
  explicit FullStateVector(int n_atoms);
  FullStateVector(int n_atoms, std::vector<cplx> amplitudes);

  int n_atoms() const { return n_atoms_; }
  std::size_t size() const { return amps_.size(); }
  cplx operator[](std::size_t mask) const { return amps_[mask]; }
  cplx& operator[](std::size_t mask) { return amps_[mask]; }
  std::span<const cplx> amplitudes() const { return amps_; }
  std::span<cplx> amplitudes() { return amps_; }
  double norm_sq() const;

 private:
  int n_atoms_;
  std::vector<cplx> amps_;
};

/// sqrt(k!(N-k)!/N!) on every mask with popcount k.
FullStateVector build_dicke_full(int k, int n_atoms);

/// (1/sqrt N) sum_i sigma_i^+ (Raise) or sigma_i^- (Lower), applied literally.
FullStateVector apply_collective_full(LadderDirection dir, const FullStateVector& state);

struct Projection {
  DickeVector dicke;
  double residual_norm;  // norm of the part orthogonal to every |k,N>
};

/// c_k = <k,N|state> for k = 0..N.
Projection project_to_dicke(const FullStateVector& state);

struct LadderCheck {
  int k;
  LadderDirection dir;
  double expected;   // closed-form coefficient
  double observed;   // brute-force overlap <k±1,N| S^(dag) |k,N>
  double deviation;  // max abs deviation over all Dicke components
  double residual;   // leakage out of the symmetric subspace
  bool pass;
};

struct EigenCheck {
  int k;
  double expected;  // (k+1)(1-k/N)
  double observed;  // <k,N| S S^dag |k,N> in the full space
  double deviation;
  double residual;
  bool pass;
};

struct VerificationReport {
  int n_atoms;
  std::vector<LadderCheck> ladder;
  std::vector<EigenCheck> ss_dagger;
  double max_deviation;
  double max_residual;
  bool pass;
};

/// Compares every brute-force ladder and S S^dag matrix element against the
/// closed forms. Pass threshold: deviation < tolerance, residual < 1e-12.
VerificationReport verify_ladder(int n_atoms, double tolerance = 1e-10);

}  // namespace dickeamp::oracle
