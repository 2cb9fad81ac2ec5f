// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "dickeamp/dicke.hpp"

namespace dickeamp {

/// Atomic density operator over the Dicke index k = 0..k_max.
class DensityMatrix {
 public:
  DensityMatrix(int n_atoms, Eigen::MatrixXcd rho);

  /// |v><v| / <v|v>.
  static DensityMatrix from_pure(const DickeVector& v);
  /// Zero operator of the given cutoff.
  static DensityMatrix zero(int n_atoms, int k_max);

  int n_atoms() const { return n_atoms_; }
  int k_max() const { return static_cast<int>(rho_.rows()) - 1; }
  const Eigen::MatrixXcd& matrix() const { return rho_; }
  cplx operator()(int i, int j) const { return rho_(i, j); }

  double trace() const;
  /// max |rho - rho^dag|.
  double hermiticity_error() const;
  double min_eigenvalue() const;
  /// tr(rho^2) / tr(rho)^2.
  double purity() const;

  /// <v|rho|v> / <v|v>; cutoffs are zero-padded.
  double expectation(const DickeVector& v) const;

  /// rho / tr(rho); throws DomainError on zero trace.
  DensityMatrix normalized() const;

  /// Rank-one decomposition rho = sum_j w_j |u_j><u_j|, w_j > cutoff * max w.
  struct Component {
    double weight;
    DickeVector vector;
  };
  std::vector<Component> components(double relative_cutoff = 1e-15) const;

  /// Unit vector u with rho = tr(rho)|u><u| when rho has purity >= 1 - tol;
  /// the phase makes the largest-magnitude entry real positive.
  std::optional<DickeVector> pure_state(double tol = 1e-12) const;

  DensityMatrix& operator+=(const DensityMatrix& other);

 private:
  int n_atoms_;
  Eigen::MatrixXcd rho_;
};

}  // namespace dickeamp
