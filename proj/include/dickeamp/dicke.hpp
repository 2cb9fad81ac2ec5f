// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exact arithmetic in the (N+1)-dimensional permutation-symmetric subspace of
// N two-level atoms. Basis vectors |k,N> carry k excitations; the collective
// operators S and S^dag connect neighbouring k with closed-form coefficients.

#include <complex>
#include <span>
#include <vector>

namespace dickeamp {

using cplx = std::complex<double>;

/// Absolute tolerance for exact algebraic identities.
inline constexpr double kExactTol = 1e-12;

/// Default excitation cutoff for atomic vectors: min(N, 16).
int default_k_max(int n_atoms);

enum class LadderDirection { Raise, Lower };

enum class Schedule { TypeI, TypeII };

/// Complex amplitudes over |k,N>, k = 0..k_max, k_max <= N.
///
/// Vectors flowing through operator pipelines are unnormalized; the norm of
/// an unnormalized vector carries success-probability information. The
/// `is_normalized` flag is set only by the factory functions that normalize
/// and is cleared by every mutation.
class DickeVector {
 public:
  /// Zero vector.
  DickeVector(int n_atoms, int k_max);
  DickeVector(int n_atoms, std::vector<cplx> amplitudes);

  /// |k,N> with unit amplitude; k_max < 0 selects default_k_max(N).
  static DickeVector basis(int k, int n_atoms, int k_max = -1);

  int n_atoms() const { return n_atoms_; }
  int k_max() const { return static_cast<int>(amps_.size()) - 1; }
  bool is_normalized() const { return normalized_; }

  cplx operator[](int k) const { return amps_[static_cast<std::size_t>(k)]; }
  void set(int k, cplx value);

  std::span<const cplx> amplitudes() const { return amps_; }
  /// Mutable view; clears the normalized flag.
  std::span<cplx> mutable_amplitudes();

  double norm_sq() const;
  double norm() const;
  bool is_zero() const;

  /// Unit-norm copy; throws DomainError on a zero vector.
  DickeVector normalized() const;

  /// Copy with a different cutoff. Shrinking throws TruncationOverflow if any
  /// dropped amplitude is nonzero.
  DickeVector with_k_max(int k_max) const;

  DickeVector& operator*=(cplx s);

 private:
  int n_atoms_;
  std::vector<cplx> amps_;
  bool normalized_ = false;

  void validate() const;
};

/// Matrix element <k+1|S^dag|k> (Raise) or <k-1|S|k> (Lower); zero where the
/// target state does not exist.
double ladder_coeff(LadderDirection dir, int k, int n_atoms);

/// Applies S^dag or S. Raise throws TruncationOverflow if amplitude would be
/// pushed past k_max while k_max < N.
DickeVector apply_ladder(LadderDirection dir, const DickeVector& state);

/// S S^dag, diagonal with eigenvalue (k+1)(1-k/N).
DickeVector apply_ss_dagger(const DickeVector& state);

/// Eigenvalue of (S S^dag)^n (TypeI) or S^n (S^dag)^n (TypeII) on |k,N>.
double gain_eigenvalue(Schedule schedule, int k, int n_atoms, int stages);

/// Amplification of the |1>-to-|0> amplitude ratio after `stages` stages:
/// 2^n (1-1/N)^n for TypeI, (n+1)(1-n/N) for TypeII.
double relative_gain(Schedule schedule, int stages, int n_atoms);

/// Normalized |G> + alpha |S>.
DickeVector weak_coherent_atomic_state(cplx alpha, int n_atoms, int k_max = -1);

/// |<a|b>|^2 / (<a|a><b|b>). Vectors of different cutoff are zero-padded.
double fidelity(const DickeVector& a, const DickeVector& b);

/// <a|b> with zero padding.
cplx inner(const DickeVector& a, const DickeVector& b);

}  // namespace dickeamp
